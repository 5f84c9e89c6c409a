#pragma once

// The rational Cherednik algebra H_c(W, h) at t = 1: elements in the PBW basis
// g * y^m * x^n, multiplication by normal ordering, filtrations, principal
// symbols, and the Fourier and opposite structure maps.

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "cherednik/groups.hpp"
#include "cherednik/syntax.hpp"

namespace cherednik {

using Monomial = std::vector<int>;
// Commutative polynomial: exponent vector -> coefficient.
using Polynomial = std::map<Monomial, Cyclo>;

struct Word {
  std::size_t g = 0;
  Monomial m;  // y exponents
  Monomial n;  // x exponents

  friend bool operator<(const Word& a, const Word& b) {
    if (a.g != b.g) return a.g < b.g;
    if (a.m != b.m) return a.m < b.m;
    return a.n < b.n;
  }
  friend bool operator==(const Word& a, const Word& b) { return a.g == b.g && a.m == b.m && a.n == b.n; }
};

class PBWElement {
 public:
  using Terms = std::map<Word, Cyclo>;

  PBWElement() = default;
  static PBWElement word(Word w, Cyclo coeff = Cyclo(1));

  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }
  Cyclo coefficient(const Word& w) const;

  void add_term(const Word& w, const Cyclo& coeff);
  PBWElement& operator+=(const PBWElement& rhs);
  PBWElement& operator-=(const PBWElement& rhs);
  PBWElement operator-() const;
  PBWElement scaled(const Cyclo& a) const;

  friend PBWElement operator+(PBWElement a, const PBWElement& b) { return a += b; }
  friend PBWElement operator-(PBWElement a, const PBWElement& b) { return a -= b; }
  friend bool operator==(const PBWElement& a, const PBWElement& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const PBWElement& a, const PBWElement& b) { return !(a == b); }

 private:
  Terms terms_;
};

enum class FiltrationKind { bernstein, geometric };
std::string to_string(FiltrationKind kind);

// Reflection class id -> c(s).
struct Parameter {
  std::map<int, Cyclo> values;

  static Parameter constant(const std::vector<ReflectionDatum>& reflections, const Cyclo& c);
  friend bool operator==(const Parameter& a, const Parameter& b) { return a.values == b.values; }
};

class AlgebraContext;
using ContextPtr = std::shared_ptr<const AlgebraContext>;

class AlgebraContext : public std::enable_shared_from_this<AlgebraContext> {
 public:
  // Parameter values must cover every reflection class and lie in Q(zeta_N), N = group order field.
  static ContextPtr make(ReflectionGroup group, Parameter parameter);
  static ContextPtr make(const ReflectionGroup& group, const Cyclo& constant_c);

  const ReflectionGroup& group() const noexcept { return group_; }
  const std::vector<ReflectionDatum>& reflections() const noexcept { return reflections_; }
  const Parameter& parameter() const noexcept { return parameter_; }
  int rank() const noexcept { return group_.rank(); }
  int field_order() const noexcept { return group_.cyclotomic_order(); }
  // c(s) for the reflection at position i of reflections().
  const Cyclo& c_of(std::size_t reflection) const;
  // Index into reflections() of group element g, if g is a reflection.
  std::optional<std::size_t> reflection_position(std::size_t g) const;

  // Identifies contexts with equal group matrices, parameter and orientation.
  const std::string& fingerprint() const noexcept { return fingerprint_; }
  bool same_as(const AlgebraContext& other) const { return fingerprint_ == other.fingerprint_; }

  // H_c(W, h*): x and y exchange roles. fourier_dual()->fourier_dual() has the
  // original fingerprint and fourier maps are mutually inverse.
  ContextPtr fourier_dual() const;
  bool fourier_negates_y() const noexcept { return negate_y_; }
  // H_{cbar}(W, h) with cbar(s) = c(s^{-1}).
  ContextPtr opposite_context() const;
  Parameter opposite_parameter() const;

  // Same algebra with alpha_s scaled by factors[i] and alpha_check_s by its inverse.
  ContextPtr with_rescaled_reflections(const std::vector<Cyclo>& factors) const;

  // Cached normal-ordering primitives (thread-safe memo tables).
  const Polynomial& act_x(std::size_t g, const Monomial& n) const;
  const Polynomial& act_y(std::size_t g, const Monomial& m) const;
  // x^n * y^m in normal form.
  const PBWElement& straighten(const Monomial& n, const Monomial& m) const;

 private:
  AlgebraContext(ReflectionGroup group, std::vector<ReflectionDatum> reflections, Parameter parameter, bool negate_y);
  static ContextPtr build(ReflectionGroup group, std::vector<ReflectionDatum> reflections, Parameter parameter,
                          bool negate_y);
  const PBWElement& straighten_one(std::size_t j, const Monomial& m) const;
  Polynomial act(std::size_t g, const Monomial& e, bool on_x) const;

  ReflectionGroup group_;
  std::vector<ReflectionDatum> reflections_;
  Parameter parameter_;
  bool negate_y_ = true;
  std::string fingerprint_;
  std::vector<std::optional<std::size_t>> reflection_of_element_;
  // [x_j, y_i] = -delta_ij + sum_s coefficient(s, i, j) s
  std::vector<std::vector<std::vector<Cyclo>>> commutator_;

  mutable std::mutex memo_mutex_;
  mutable std::map<std::pair<std::size_t, Monomial>, Polynomial> act_x_memo_;
  mutable std::map<std::pair<std::size_t, Monomial>, Polynomial> act_y_memo_;
  mutable std::map<std::pair<std::size_t, Monomial>, PBWElement> one_memo_;
  mutable std::map<std::pair<Monomial, Monomial>, PBWElement> straighten_memo_;
  mutable std::mutex derived_mutex_;
  mutable ContextPtr dual_;
  mutable ContextPtr opposite_;
};

// Basic elements.
PBWElement scalar_element(const AlgebraContext& ctx, const Cyclo& a);
PBWElement group_element(const AlgebraContext& ctx, std::size_t g);
PBWElement x_generator(const AlgebraContext& ctx, std::size_t i);
PBWElement y_generator(const AlgebraContext& ctx, std::size_t i);

PBWElement multiply(const AlgebraContext& ctx, const PBWElement& a, const PBWElement& b);
PBWElement power(const AlgebraContext& ctx, const PBWElement& a, unsigned exponent);
PBWElement commutator(const AlgebraContext& ctx, const PBWElement& a, const PBWElement& b);

// nullopt stands for -infinity (the zero element).
std::optional<int> filtration_degree(const PBWElement& e, FiltrationKind kind);
int word_degree(const Word& w, FiltrationKind kind);

// Homogeneous element of gr H_c = C[h + h*] x| CW, stored in the same word basis.
struct GradedSymbol {
  FiltrationKind kind = FiltrationKind::bernstein;
  int degree = 0;
  PBWElement::Terms terms;
  bool is_zero() const noexcept { return terms.empty(); }
  friend bool operator==(const GradedSymbol& a, const GradedSymbol& b) {
    return a.kind == b.kind && a.terms == b.terms && (a.terms.empty() || a.degree == b.degree);
  }
};

GradedSymbol principal_symbol(const PBWElement& e, FiltrationKind kind);
// Product in the commutative skew group ring; independent of normal ordering.
GradedSymbol symbol_product(const AlgebraContext& ctx, const GradedSymbol& a, const GradedSymbol& b);

// x -> x, y -> -y, g -> g, landing in ctx.fourier_dual().
PBWElement fourier_image(const AlgebraContext& ctx, const PBWElement& e);
// Anti-isomorphism into ctx.opposite_context(): x -> x, y -> -y, g -> g^{-1}.
PBWElement opposite_image(const AlgebraContext& ctx, const PBWElement& e);

struct WordSampler {
  int max_letter_degree = 2;  // per-letter exponent bound
  int max_total_degree = 3;
};
Word random_word(const AlgebraContext& ctx, std::mt19937_64& rng, const WordSampler& sampler = {});
PBWElement random_element(const AlgebraContext& ctx, std::mt19937_64& rng, int terms = 3,
                          const WordSampler& sampler = {});
// Random rational with |numerator|, |denominator| <= bound.
Rational random_rational(std::mt19937_64& rng, int bound);

struct AssociativityReport {
  std::size_t samples = 0;
  std::size_t failures = 0;
  std::vector<std::array<Word, 3>> counterexamples;
};
AssociativityReport verify_associativity(const AlgebraContext& ctx, std::size_t samples, std::uint64_t seed,
                                         const WordSampler& sampler = {});

struct PropertyReport {
  std::size_t samples = 0;
  std::size_t checked = 0;  // samples where the property applied
  std::size_t failures = 0;
  std::vector<std::string> details;
};
// sigma(ab) = sigma(a) sigma(b) on random pairs whenever the right side is nonzero.
PropertyReport verify_symbol_multiplicativity(const AlgebraContext& ctx, std::size_t samples, std::uint64_t seed,
                                              FiltrationKind kind, const WordSampler& sampler = {});
// fourier(fourier(e)) = e, fourier(ab) = fourier(a) fourier(b), opposite(ab) = opposite(b) opposite(a)
// and opposite(opposite(e)) = e on random pairs.
PropertyReport verify_structure_maps(const AlgebraContext& ctx, std::size_t samples, std::uint64_t seed,
                                     const WordSampler& sampler = {});

// Expressions over x1..xr, y1..yr, g0..g{|W|-1}, `s` (rank 1: first reflection), scalars.
PBWElement evaluate_expression(const AlgebraContext& ctx, const syntax::Node& node);
PBWElement parse_expression(const std::string& source, const AlgebraContext& ctx);

// Canonical text form, reparseable by parse_expression.
std::string to_expression(const AlgebraContext& ctx, const PBWElement& e);
std::string word_to_string(const Word& w);
// "c1*w1 + c2*w2 - ..." with the word "1" printed as a bare scalar.
std::string format_combination(const std::vector<std::pair<Cyclo, std::string>>& terms);

}  // namespace cherednik
