#pragma once

// Module models for H_c: Verma modules C[h] (x) tau, the regular module,
// quotients of Vermas by singular vectors, external tensor products with
// D(h2)-modules and direct sums. Bernstein filtrations, Hilbert data, GK
// dimension, singular vectors and the holonomicity checks.

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "cherednik/errors.hpp"
#include "cherednik/pbw.hpp"

namespace cherednik {

inline constexpr int default_truncation = 40;
inline constexpr int default_hilbert_window = 24;
inline constexpr int default_stable_points = 6;

// Lazily assigned integer labels for basis keys; thread-safe.
template <class Key>
class LabelTable {
 public:
  std::size_t id(const Key& key) const {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = ids_.find(key);
    if (it != ids_.end()) return it->second;
    ids_.emplace(key, keys_.size());
    keys_.push_back(key);
    return keys_.size() - 1;
  }
  Key key(std::size_t label) const {
    std::lock_guard<std::mutex> lock(mutex_);
    return keys_.at(label);
  }

 private:
  mutable std::mutex mutex_;
  mutable std::map<Key, std::size_t> ids_;
  mutable std::vector<Key> keys_;
};

class ModuleModel {
 public:
  ModuleModel(ContextPtr ctx, int truncation) : ctx_(std::move(ctx)), truncation_(truncation) {}
  virtual ~ModuleModel() = default;
  ModuleModel(const ModuleModel&) = delete;
  ModuleModel& operator=(const ModuleModel&) = delete;

  const AlgebraContext& context() const noexcept { return *ctx_; }
  const ContextPtr& context_ptr() const noexcept { return ctx_; }
  int truncation() const noexcept { return truncation_; }

  virtual std::string kind() const = 0;
  // Generator actions on a basis vector. Results past the truncation throw BudgetExceeded.
  virtual SparseVector act_x(std::size_t i, std::size_t label) const = 0;
  virtual SparseVector act_y(std::size_t i, std::size_t label) const = 0;
  virtual SparseVector act_g(std::size_t g, std::size_t label) const = 0;
  virtual int degree(std::size_t label) const = 0;
  virtual std::string label_name(std::size_t label) const = 0;
  // All basis labels of degree <= d (d <= truncation).
  virtual std::vector<std::size_t> basis_up_to(int d) const = 0;
  // Generators of a good filtration.
  virtual std::vector<SparseVector> default_generators() const = 0;

 protected:
  void check_degree(int d) const {
    if (d > truncation_) {
      throw BudgetExceeded(kind() + " module: degree " + std::to_string(d) + " exceeds the truncation " +
                           std::to_string(truncation_));
    }
  }

 private:
  ContextPtr ctx_;
  int truncation_;
};

using ModulePtr = std::shared_ptr<const ModuleModel>;

// Vector-level actions.
SparseVector apply_x(const ModuleModel& M, std::size_t i, const SparseVector& v);
SparseVector apply_y(const ModuleModel& M, std::size_t i, const SparseVector& v);
SparseVector apply_g(const ModuleModel& M, std::size_t g, const SparseVector& v);
// rho(g y^m x^n) v = g(y^m(x^n v)).
SparseVector apply_element(const ModuleModel& M, const PBWElement& e, const SparseVector& v);
std::string vector_to_string(const ModuleModel& M, const SparseVector& v);

struct VermaSpec {
  ContextPtr context;
  Character character;  // tau, a linear character of W
  int truncation = default_truncation;
};

// C[h] (x) tau; y annihilates 1 (x) tau and acts through the commutation relations.
ModulePtr build_verma(const VermaSpec& spec);
// The character tau of a Verma model, nullptr for other models.
const Character* verma_character(const ModuleModel& M);
// H_c acting on itself by left multiplication, graded by Bernstein degree.
ModulePtr build_regular(ContextPtr ctx, int truncation = default_truncation);
// Verma quotient by the submodule generated by singular vectors (each must be singular).
ModulePtr build_verma_quotient(const ModulePtr& verma, const std::vector<SparseVector>& singular);
// M over H_c(W, h1) and N over D(h2) = H(1, h2); W acts trivially on h2.
ModulePtr external_tensor(const ModulePtr& M, const ModulePtr& N);
ModulePtr direct_sum(const ModulePtr& M, const ModulePtr& N);

// Monomials of total degree d in r variables, lexicographically decreasing.
std::vector<Monomial> monomials_of_degree(std::size_t r, int d);

struct HilbertData {
  FiltrationKind kind = FiltrationKind::bernstein;
  std::vector<long> dims;  // dim F_j, j = 0..J
  std::size_t generators = 0;
};

// The filtration together with the basis vectors added at each stage.
struct BernsteinFiltration {
  HilbertData hilbert;
  std::vector<std::vector<SparseVector>> added;
};

BernsteinFiltration bernstein_filtration(const ModuleModel& M, const std::vector<SparseVector>& generators, int J);
HilbertData bernstein_filtration_dims(const ModuleModel& M, const std::vector<SparseVector>& generators, int J);

struct GKReport {
  int gk_dim = 0;
  Rational leading_coefficient;
  int window_begin = 0;  // j-range on which the (gk+1)-st differences vanish
  int window_end = 0;
  bool polynomiality_verified = false;
  std::vector<Rational> polynomial;  // Hilbert polynomial in j, lowest degree first
};

GKReport gk_dimension(const std::vector<long>& dims, int stable_points = default_stable_points);
GKReport gk_dimension(const HilbertData& h, int stable_points = default_stable_points);

// True iff GK = rank. Requires a nonzero module and an established regular parameter;
// GK < rank contradicts the Bernstein inequality and raises InternalInconsistency.
bool is_holonomic_regular(const ModuleModel& M, const HilbertData& h, bool regular_established);

enum class Holonomicity { holonomic, not_holonomic, undetermined };
std::string to_string(Holonomicity h);

struct LeafReport {
  ParabolicClass parabolic;
  int support_dim = 0;  // dimension of supp(gr M) meeting (h + h*)^{W'}
  int allowed_dim = 0;  // dim h^{W'}, half the leaf dimension
  std::vector<long> cumulative;
};

struct HolonomicityReport {
  Holonomicity verdict = Holonomicity::undetermined;
  int gk_dim = 0;
  int rank = 0;
  bool regular = false;
  std::vector<LeafReport> leaves;
  std::string reason;
};

// Leafwise test: supp(gr M) cut with each fixed subspace (h + h*)^{W'} must have
// dimension at most dim h^{W'}. Any excess proves non-holonomicity; otherwise the
// verdict is holonomic when c is regular or every measured support has dimension <= 1.
HolonomicityReport holonomicity(const ModuleModel& M, const std::vector<SparseVector>& generators, int J,
                                bool regular_established);

struct SingularVector {
  int degree = 0;
  SparseVector vector;
  std::optional<std::size_t> character;  // index into linear_characters(W); nullopt: not a linear isotypic part
  Character character_values;
  ModulePtr module;  // the Verma module whose labels `vector` refers to
};

// Homogeneous vectors of degree 1..bound killed by every y_i, one basis per (degree, W-character).
std::vector<SingularVector> find_singular_vectors(const VermaSpec& spec, int bound);
std::vector<SingularVector> find_singular_vectors(const ModulePtr& verma, int bound);

struct RelationCheck {
  std::size_t vectors = 0;
  std::size_t checks = 0;
  std::size_t failures = 0;
  std::vector<std::string> details;
};
// [y_i, x_j], [x_i, x_j], [y_i, y_j], g x g^{-1}, g y g^{-1} and g h = (gh) on basis vectors of degree <= max_degree.
RelationCheck check_module_relations(const ModuleModel& M, int max_degree);
// rho(a) rho(b) v = rho(ab) v for random small a, b.
RelationCheck check_module_products(const ModuleModel& M, std::size_t samples, std::uint64_t seed, int max_degree);

}  // namespace cherednik
