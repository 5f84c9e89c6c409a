#include "cherednik/pbw.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "cherednik/errors.hpp"

namespace cherednik {

namespace {

Monomial unit(std::size_t r, std::size_t i) {
  Monomial e(r, 0);
  e[i] = 1;
  return e;
}

int total(const Monomial& e) {
  int t = 0;
  for (int v : e) t += v;
  return t;
}

Monomial add(const Monomial& a, const Monomial& b) {
  Monomial out = a;
  for (std::size_t i = 0; i < b.size(); ++i) out[i] += b[i];
  return out;
}

void add_to(Polynomial& p, const Monomial& e, const Cyclo& c) {
  if (c.is_zero()) return;
  auto it = p.find(e);
  if (it == p.end()) {
    p.emplace(e, c);
  } else {
    it->second += c;
    if (it->second.is_zero()) p.erase(it);
  }
}

Polynomial poly_mul(const Polynomial& a, const Polynomial& b) {
  Polynomial out;
  for (const auto& [ea, ca] : a)
    for (const auto& [eb, cb] : b) add_to(out, add(ea, eb), ca * cb);
  return out;
}

Cyclo into_field(const Cyclo& a, int order) {
  if (a.order() == order || a.order() == 1) return a;
  if (order % a.order() != 0) {
    throw InvalidInput("scalar " + a.to_string() + " does not lie in Q(zeta_" + std::to_string(order) + ")");
  }
  return a.embed(order);
}

}  // namespace

PBWElement PBWElement::word(Word w, Cyclo coeff) {
  PBWElement e;
  e.add_term(w, coeff);
  return e;
}

Cyclo PBWElement::coefficient(const Word& w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? Cyclo(0) : it->second;
}

void PBWElement::add_term(const Word& w, const Cyclo& coeff) {
  if (coeff.is_zero()) return;
  auto it = terms_.find(w);
  if (it == terms_.end()) {
    terms_.emplace(w, coeff);
  } else {
    it->second += coeff;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

PBWElement& PBWElement::operator+=(const PBWElement& rhs) {
  for (const auto& [w, c] : rhs.terms_) add_term(w, c);
  return *this;
}

PBWElement& PBWElement::operator-=(const PBWElement& rhs) {
  for (const auto& [w, c] : rhs.terms_) add_term(w, -c);
  return *this;
}

PBWElement PBWElement::operator-() const {
  PBWElement out = *this;
  for (auto& [w, c] : out.terms_) c = -c;
  return out;
}

PBWElement PBWElement::scaled(const Cyclo& a) const {
  PBWElement out;
  if (a.is_zero()) return out;
  out.terms_ = terms_;
  for (auto& [w, c] : out.terms_) c *= a;
  return out;
}

std::string to_string(FiltrationKind kind) { return kind == FiltrationKind::bernstein ? "bernstein" : "geometric"; }

Parameter Parameter::constant(const std::vector<ReflectionDatum>& reflections, const Cyclo& c) {
  Parameter p;
  for (const auto& r : reflections) p.values[r.class_id] = c;
  return p;
}

// ---------------------------------------------------------------------------

AlgebraContext::AlgebraContext(ReflectionGroup group, std::vector<ReflectionDatum> reflections, Parameter parameter,
                               bool negate_y)
    : group_(std::move(group)), reflections_(std::move(reflections)), parameter_(std::move(parameter)),
      negate_y_(negate_y) {
  const int order = group_.cyclotomic_order();
  for (const auto& r : reflections_) {
    auto it = parameter_.values.find(r.class_id);
    if (it == parameter_.values.end()) {
      throw InvalidInput("parameter has no value for reflection class " + std::to_string(r.class_id));
    }
  }
  for (auto& [k, v] : parameter_.values) v = into_field(v, order);

  reflection_of_element_.assign(group_.order(), std::nullopt);
  for (std::size_t i = 0; i < reflections_.size(); ++i) reflection_of_element_[reflections_[i].element] = i;

  const std::size_t r = group_.rank();
  commutator_.assign(reflections_.size(), std::vector<std::vector<Cyclo>>(r, std::vector<Cyclo>(r)));
  for (std::size_t s = 0; s < reflections_.size(); ++s) {
    const Cyclo& c = parameter_.values.at(reflections_[s].class_id);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j)
        commutator_[s][i][j] = c * reflections_[s].alpha[i] * reflections_[s].alpha_check[j];
  }

  std::ostringstream fp;
  fp << "r=" << r << ";N=" << order << ";y" << (negate_y_ ? "-" : "+") << ";gens:";
  for (auto idx : group_.generator_indices()) fp << group_.element(idx).key() << "|";
  fp << ";c:";
  for (const auto& [k, v] : parameter_.values) fp << k << "=" << v.to_string() << "|";
  fingerprint_ = fp.str();
}

ContextPtr AlgebraContext::build(ReflectionGroup group, std::vector<ReflectionDatum> reflections, Parameter parameter,
                                 bool negate_y) {
  return ContextPtr(new AlgebraContext(std::move(group), std::move(reflections), std::move(parameter), negate_y));
}

ContextPtr AlgebraContext::make(ReflectionGroup group, Parameter parameter) {
  auto reflections = find_reflections(group);
  std::set<int> classes;
  for (const auto& r : reflections) classes.insert(r.class_id);
  for (const auto& [k, v] : parameter.values) {
    if (!classes.count(k)) throw InvalidInput("parameter names unknown reflection class " + std::to_string(k));
  }
  return build(std::move(group), std::move(reflections), std::move(parameter), true);
}

ContextPtr AlgebraContext::make(const ReflectionGroup& group, const Cyclo& constant_c) {
  return make(group, Parameter::constant(find_reflections(group), constant_c));
}

const Cyclo& AlgebraContext::c_of(std::size_t reflection) const {
  return parameter_.values.at(reflections_.at(reflection).class_id);
}

std::optional<std::size_t> AlgebraContext::reflection_position(std::size_t g) const {
  return reflection_of_element_.at(g);
}

ContextPtr AlgebraContext::fourier_dual() const {
  std::lock_guard<std::mutex> lock(derived_mutex_);
  if (!dual_) {
    ReflectionGroup dual_group = group_.dual();
    auto reflections = find_reflections(dual_group);
    dual_ = build(std::move(dual_group), std::move(reflections), parameter_, !negate_y_);
  }
  return dual_;
}

Parameter AlgebraContext::opposite_parameter() const {
  Parameter out;
  for (const auto& r : reflections_) {
    const std::size_t inv = group_.inverse(r.element);
    const auto pos = reflection_of_element_.at(inv);
    if (!pos) throw InternalInconsistency("inverse of a reflection is not a reflection");
    out.values[r.class_id] = parameter_.values.at(reflections_[*pos].class_id);
  }
  return out;
}

ContextPtr AlgebraContext::opposite_context() const {
  std::lock_guard<std::mutex> lock(derived_mutex_);
  if (!opposite_) opposite_ = build(group_, reflections_, opposite_parameter(), negate_y_);
  return opposite_;
}

ContextPtr AlgebraContext::with_rescaled_reflections(const std::vector<Cyclo>& factors) const {
  if (factors.size() != reflections_.size()) throw InvalidInput("one rescaling factor per reflection required");
  auto reflections = reflections_;
  for (std::size_t i = 0; i < reflections.size(); ++i) {
    if (factors[i].is_zero()) throw InvalidInput("rescaling factor must be nonzero");
    const Cyclo inv = factors[i].inverse();
    for (auto& a : reflections[i].alpha) a *= factors[i];
    for (auto& a : reflections[i].alpha_check) a *= inv;
  }
  return build(group_, std::move(reflections), parameter_, negate_y_);
}

Polynomial AlgebraContext::act(std::size_t g, const Monomial& e, bool on_x) const {
  const Matrix& mat = on_x ? group_.dual_element(g) : group_.element(g);
  const std::size_t r = group_.rank();
  Polynomial out{{Monomial(r, 0), Cyclo(1)}};
  for (std::size_t j = 0; j < r; ++j) {
    if (e[j] == 0) continue;
    Polynomial linear;
    for (std::size_t i = 0; i < r; ++i) add_to(linear, unit(r, i), mat(i, j));
    for (int k = 0; k < e[j]; ++k) out = poly_mul(out, linear);
  }
  return out;
}

const Polynomial& AlgebraContext::act_x(std::size_t g, const Monomial& n) const {
  auto key = std::make_pair(g, n);
  {
    std::lock_guard<std::mutex> lock(memo_mutex_);
    auto it = act_x_memo_.find(key);
    if (it != act_x_memo_.end()) return it->second;
  }
  Polynomial value = act(g, n, true);
  std::lock_guard<std::mutex> lock(memo_mutex_);
  return act_x_memo_.emplace(std::move(key), std::move(value)).first->second;
}

const Polynomial& AlgebraContext::act_y(std::size_t g, const Monomial& m) const {
  auto key = std::make_pair(g, m);
  {
    std::lock_guard<std::mutex> lock(memo_mutex_);
    auto it = act_y_memo_.find(key);
    if (it != act_y_memo_.end()) return it->second;
  }
  Polynomial value = act(g, m, false);
  std::lock_guard<std::mutex> lock(memo_mutex_);
  return act_y_memo_.emplace(std::move(key), std::move(value)).first->second;
}

// x_j * y^m.
const PBWElement& AlgebraContext::straighten_one(std::size_t j, const Monomial& m) const {
  auto key = std::make_pair(j, m);
  {
    std::lock_guard<std::mutex> lock(memo_mutex_);
    auto it = one_memo_.find(key);
    if (it != one_memo_.end()) return it->second;
  }
  const std::size_t r = group_.rank();
  PBWElement value;
  std::size_t i = 0;
  while (i < r && m[i] == 0) ++i;
  if (i == r) {
    value.add_term(Word{0, Monomial(r, 0), unit(r, j)}, Cyclo(1));
  } else {
    Monomial rest = m;
    --rest[i];
    // x_j y_i y^rest = y_i (x_j y^rest) + [x_j, y_i] y^rest
    for (const auto& [w, coeff] : straighten_one(j, rest).terms()) {
      for (const auto& [e, a] : act_y(group_.inverse(w.g), unit(r, i))) {
        value.add_term(Word{w.g, add(e, w.m), w.n}, coeff * a);
      }
    }
    if (i == j) value.add_term(Word{0, rest, Monomial(r, 0)}, Cyclo(-1));
    for (std::size_t s = 0; s < reflections_.size(); ++s) {
      value.add_term(Word{reflections_[s].element, rest, Monomial(r, 0)}, commutator_[s][i][j]);
    }
  }
  std::lock_guard<std::mutex> lock(memo_mutex_);
  return one_memo_.emplace(std::move(key), std::move(value)).first->second;
}

const PBWElement& AlgebraContext::straighten(const Monomial& n, const Monomial& m) const {
  auto key = std::make_pair(n, m);
  {
    std::lock_guard<std::mutex> lock(memo_mutex_);
    auto it = straighten_memo_.find(key);
    if (it != straighten_memo_.end()) return it->second;
  }
  const std::size_t r = group_.rank();
  PBWElement value;
  std::size_t j = 0;
  while (j < r && n[j] == 0) ++j;
  if (j == r || total(m) == 0) {
    value.add_term(Word{0, m, n}, Cyclo(1));
  } else {
    Monomial rest = n;
    --rest[j];
    // x^rest (x_j y^m) = sum h (h^{-1}.x^rest) y^b x^c
    for (const auto& [w, coeff] : straighten_one(j, m).terms()) {
      for (const auto& [d, a] : act_x(group_.inverse(w.g), rest)) {
        for (const auto& [w2, b] : straighten(d, w.m).terms()) {
          value.add_term(Word{group_.multiply(w.g, w2.g), w2.m, add(w2.n, w.n)}, coeff * a * b);
        }
      }
    }
  }
  std::lock_guard<std::mutex> lock(memo_mutex_);
  return straighten_memo_.emplace(std::move(key), std::move(value)).first->second;
}

// ---------------------------------------------------------------------------

PBWElement scalar_element(const AlgebraContext& ctx, const Cyclo& a) {
  const std::size_t r = ctx.rank();
  return PBWElement::word(Word{0, Monomial(r, 0), Monomial(r, 0)}, into_field(a, ctx.field_order()));
}

PBWElement group_element(const AlgebraContext& ctx, std::size_t g) {
  if (g >= ctx.group().order()) throw InvalidInput("group element index out of range");
  const std::size_t r = ctx.rank();
  return PBWElement::word(Word{g, Monomial(r, 0), Monomial(r, 0)});
}

PBWElement x_generator(const AlgebraContext& ctx, std::size_t i) {
  const std::size_t r = ctx.rank();
  if (i >= r) throw InvalidInput("x index out of range");
  return PBWElement::word(Word{0, Monomial(r, 0), unit(r, i)});
}

PBWElement y_generator(const AlgebraContext& ctx, std::size_t i) {
  const std::size_t r = ctx.rank();
  if (i >= r) throw InvalidInput("y index out of range");
  return PBWElement::word(Word{0, unit(r, i), Monomial(r, 0)});
}

PBWElement multiply(const AlgebraContext& ctx, const PBWElement& a, const PBWElement& b) {
  const auto& group = ctx.group();
  const std::size_t r = ctx.rank();
  PBWElement out;
  for (const auto& [w1, c1] : a.terms()) {
    if (w1.m.size() != r || w1.n.size() != r) throw InvalidInput("element does not belong to this context");
    for (const auto& [w2, c2] : b.terms()) {
      if (w2.m.size() != r || w2.n.size() != r) throw InvalidInput("element does not belong to this context");
      // g1 Y1 X1 g2 Y2 X2 = g1 g2 (g2^{-1}.Y1)(g2^{-1}.X1) Y2 X2
      const std::size_t g2inv = group.inverse(w2.g);
      const std::size_t g12 = group.multiply(w1.g, w2.g);
      const Polynomial& ys = ctx.act_y(g2inv, w1.m);
      const Cyclo c12 = c1 * c2;
      for (const auto& [q, qc] : ctx.act_x(g2inv, w1.n)) {
        // (X1') Y2 = sum h y^b x^c, then Y1' h = h (h^{-1}.Y1')
        for (const auto& [w3, c3] : ctx.straighten(q, w2.m).terms()) {
          const std::size_t hinv = group.inverse(w3.g);
          const Cyclo base = c12 * qc * c3;
          const Monomial xs = add(w3.n, w2.n);
          const std::size_t g = group.multiply(g12, w3.g);
          for (const auto& [p, pc] : ys) {
            for (const auto& [e, ec] : ctx.act_y(hinv, p)) {
              out.add_term(Word{g, add(e, w3.m), xs}, base * pc * ec);
            }
          }
        }
      }
    }
  }
  return out;
}

PBWElement power(const AlgebraContext& ctx, const PBWElement& a, unsigned exponent) {
  PBWElement result = scalar_element(ctx, Cyclo(1));
  PBWElement base = a;
  while (exponent > 0) {
    if (exponent & 1U) result = multiply(ctx, result, base);
    exponent >>= 1U;
    if (exponent > 0) base = multiply(ctx, base, base);
  }
  return result;
}

PBWElement commutator(const AlgebraContext& ctx, const PBWElement& a, const PBWElement& b) {
  return multiply(ctx, a, b) - multiply(ctx, b, a);
}

int word_degree(const Word& w, FiltrationKind kind) {
  return kind == FiltrationKind::bernstein ? total(w.m) + total(w.n) : total(w.m);
}

std::optional<int> filtration_degree(const PBWElement& e, FiltrationKind kind) {
  std::optional<int> best;
  for (const auto& [w, c] : e.terms()) {
    const int d = word_degree(w, kind);
    if (!best || d > *best) best = d;
  }
  return best;
}

GradedSymbol principal_symbol(const PBWElement& e, FiltrationKind kind) {
  const auto deg = filtration_degree(e, kind);
  if (!deg) throw InvalidInput("the zero element has no principal symbol");
  GradedSymbol out;
  out.kind = kind;
  out.degree = *deg;
  for (const auto& [w, c] : e.terms())
    if (word_degree(w, kind) == *deg) out.terms.emplace(w, c);
  return out;
}

GradedSymbol symbol_product(const AlgebraContext& ctx, const GradedSymbol& a, const GradedSymbol& b) {
  if (a.kind != b.kind) throw InvalidInput("symbols of different filtrations");
  const auto& group = ctx.group();
  PBWElement acc;
  for (const auto& [w1, c1] : a.terms) {
    for (const auto& [w2, c2] : b.terms) {
      const std::size_t g2inv = group.inverse(w2.g);
      const std::size_t g = group.multiply(w1.g, w2.g);
      for (const auto& [p, pc] : ctx.act_y(g2inv, w1.m))
        for (const auto& [q, qc] : ctx.act_x(g2inv, w1.n))
          acc.add_term(Word{g, add(p, w2.m), add(q, w2.n)}, c1 * c2 * pc * qc);
    }
  }
  GradedSymbol out;
  out.kind = a.kind;
  out.degree = a.degree + b.degree;
  out.terms = acc.terms();
  return out;
}

PBWElement fourier_image(const AlgebraContext& ctx, const PBWElement& e) {
  const ContextPtr dual = ctx.fourier_dual();
  PBWElement out;
  for (const auto& [w, c] : e.terms()) {
    const int flips = ctx.fourier_negates_y() ? total(w.m) : total(w.n);
    const Cyclo sign(flips % 2 == 0 ? 1 : -1);
    // g y^m x^n -> g X^m Y^n in the dual context
    for (const auto& [w2, c2] : dual->straighten(w.m, w.n).terms()) {
      out.add_term(Word{ctx.group().multiply(w.g, w2.g), w2.m, w2.n}, sign * c * c2);
    }
  }
  return out;
}

PBWElement opposite_image(const AlgebraContext& ctx, const PBWElement& e) {
  const ContextPtr opp = ctx.opposite_context();
  const auto& group = ctx.group();
  PBWElement out;
  for (const auto& [w, c] : e.terms()) {
    const Cyclo sign(total(w.m) % 2 == 0 ? 1 : -1);
    const std::size_t ginv = group.inverse(w.g);
    // x^n y^m g^{-1} = sum h y^b x^c g^{-1} = sum h g^{-1} (g.y^b)(g.x^c)
    for (const auto& [w2, c2] : opp->straighten(w.n, w.m).terms()) {
      const std::size_t h = group.multiply(w2.g, ginv);
      for (const auto& [p, pc] : opp->act_y(w.g, w2.m))
        for (const auto& [q, qc] : opp->act_x(w.g, w2.n)) out.add_term(Word{h, p, q}, sign * c * c2 * pc * qc);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

Rational random_rational(std::mt19937_64& rng, int bound) {
  std::uniform_int_distribution<int> num(-bound, bound);
  std::uniform_int_distribution<int> den(1, bound);
  Rational q(num(rng), den(rng));
  q.canonicalize();
  return q;
}

Word random_word(const AlgebraContext& ctx, std::mt19937_64& rng, const WordSampler& sampler) {
  const std::size_t r = ctx.rank();
  std::uniform_int_distribution<std::size_t> pick_g(0, ctx.group().order() - 1);
  std::uniform_int_distribution<int> pick_e(0, sampler.max_letter_degree);
  std::uniform_int_distribution<std::size_t> pick_slot(0, 2 * r - 1);
  Word w{pick_g(rng), Monomial(r, 0), Monomial(r, 0)};
  for (std::size_t i = 0; i < r; ++i) w.m[i] = pick_e(rng);
  for (std::size_t i = 0; i < r; ++i) w.n[i] = pick_e(rng);
  while (total(w.m) + total(w.n) > sampler.max_total_degree) {
    const std::size_t slot = pick_slot(rng);
    int& e = slot < r ? w.m[slot] : w.n[slot - r];
    if (e > 0) --e;
  }
  return w;
}

PBWElement random_element(const AlgebraContext& ctx, std::mt19937_64& rng, int terms, const WordSampler& sampler) {
  PBWElement out;
  while (out.is_zero()) {
    for (int t = 0; t < terms; ++t) {
      Rational q;
      do {
        q = random_rational(rng, 3);
      } while (q == 0);
      out.add_term(random_word(ctx, rng, sampler), Cyclo(q));
    }
  }
  return out;
}

AssociativityReport verify_associativity(const AlgebraContext& ctx, std::size_t samples, std::uint64_t seed,
                                         const WordSampler& sampler) {
  std::mt19937_64 rng(seed);
  AssociativityReport report;
  report.samples = samples;
  for (std::size_t i = 0; i < samples; ++i) {
    const Word a = random_word(ctx, rng, sampler);
    const Word b = random_word(ctx, rng, sampler);
    const Word c = random_word(ctx, rng, sampler);
    const PBWElement ea = PBWElement::word(a), eb = PBWElement::word(b), ec = PBWElement::word(c);
    const PBWElement left = multiply(ctx, multiply(ctx, ea, eb), ec);
    const PBWElement right = multiply(ctx, ea, multiply(ctx, eb, ec));
    if (left != right) {
      ++report.failures;
      if (report.counterexamples.size() < 10) report.counterexamples.push_back({a, b, c});
    }
  }
  return report;
}

PropertyReport verify_symbol_multiplicativity(const AlgebraContext& ctx, std::size_t samples, std::uint64_t seed,
                                              FiltrationKind kind, const WordSampler& sampler) {
  std::mt19937_64 rng(seed);
  PropertyReport report;
  report.samples = samples;
  for (std::size_t i = 0; i < samples; ++i) {
    const PBWElement a = random_element(ctx, rng, 2, sampler);
    const PBWElement b = random_element(ctx, rng, 2, sampler);
    const GradedSymbol expected = symbol_product(ctx, principal_symbol(a, kind), principal_symbol(b, kind));
    if (expected.is_zero()) continue;
    ++report.checked;
    if (principal_symbol(multiply(ctx, a, b), kind) != expected) {
      ++report.failures;
      if (report.details.size() < 10)
        report.details.push_back("sigma(ab) != sigma(a)sigma(b) for a = " + to_expression(ctx, a) +
                                 ", b = " + to_expression(ctx, b));
    }
  }
  return report;
}

PropertyReport verify_structure_maps(const AlgebraContext& ctx, std::size_t samples, std::uint64_t seed,
                                     const WordSampler& sampler) {
  std::mt19937_64 rng(seed);
  PropertyReport report;
  report.samples = samples;
  const auto dual = ctx.fourier_dual();
  const auto opp = ctx.opposite_context();
  auto fail = [&](const std::string& what, const PBWElement& a, const PBWElement& b) {
    ++report.failures;
    if (report.details.size() < 10)
      report.details.push_back(what + " for a = " + to_expression(ctx, a) + ", b = " + to_expression(ctx, b));
  };
  for (std::size_t i = 0; i < samples; ++i) {
    const PBWElement a = random_element(ctx, rng, 2, sampler);
    const PBWElement b = random_element(ctx, rng, 2, sampler);
    const PBWElement ab = multiply(ctx, a, b);
    ++report.checked;
    const PBWElement fa = fourier_image(ctx, a), fb = fourier_image(ctx, b);
    if (fourier_image(*dual, fa) != a) fail("fourier(fourier(a)) != a", a, b);
    if (fourier_image(ctx, ab) != multiply(*dual, fa, fb)) fail("fourier(ab) != fourier(a)fourier(b)", a, b);
    const PBWElement oa = opposite_image(ctx, a), ob = opposite_image(ctx, b);
    if (opposite_image(ctx, ab) != multiply(*opp, ob, oa)) fail("opposite(ab) != opposite(b)opposite(a)", a, b);
    if (opposite_image(*opp, oa) != a) fail("opposite(opposite(a)) != a", a, b);
  }
  return report;
}

// ---------------------------------------------------------------------------

namespace {

std::optional<std::size_t> indexed_name(const std::string& name, char prefix) {
  if (name.size() < 2 || name[0] != prefix || name.size() > 8) return std::nullopt;
  for (std::size_t i = 1; i < name.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(name[i]))) return std::nullopt;
  return static_cast<std::size_t>(std::stoul(name.substr(1)));
}

// The element as c * g, when it is a nonzero multiple of a single group element.
std::optional<std::pair<std::size_t, Cyclo>> as_group_multiple(const PBWElement& e) {
  if (e.size() != 1) return std::nullopt;
  const auto& [w, c] = *e.terms().begin();
  if (total(w.m) != 0 || total(w.n) != 0) return std::nullopt;
  return std::make_pair(w.g, c);
}

}  // namespace

PBWElement evaluate_expression(const AlgebraContext& ctx, const syntax::Node& node) {
  using Kind = syntax::Node::Kind;
  const std::size_t r = ctx.rank();
  switch (node.kind) {
    case Kind::number:
      return scalar_element(ctx, Cyclo(Rational(node.number)));
    case Kind::identifier: {
      const std::string& name = node.name;
      if (name == "s") {
        if (r != 1 || ctx.reflections().empty()) {
          throw ParseError(node.line, node.column, "'s' is only defined in rank 1 with a reflection");
        }
        return group_element(ctx, ctx.reflections().front().element);
      }
      if (auto i = indexed_name(name, 'x'); i && *i >= 1) {
        if (*i > r) throw ParseError(node.line, node.column, "'" + name + "' exceeds rank " + std::to_string(r));
        return x_generator(ctx, *i - 1);
      }
      if (auto i = indexed_name(name, 'y'); i && *i >= 1) {
        if (*i > r) throw ParseError(node.line, node.column, "'" + name + "' exceeds rank " + std::to_string(r));
        return y_generator(ctx, *i - 1);
      }
      if (auto i = indexed_name(name, 'g'); i) {
        if (*i >= ctx.group().order()) {
          throw ParseError(node.line, node.column,
                           "'" + name + "' exceeds the group order " + std::to_string(ctx.group().order()));
        }
        return group_element(ctx, *i);
      }
      if (indexed_name(name, 'z')) return scalar_element(ctx, syntax::evaluate_scalar(node, ctx.field_order()));
      throw ParseError(node.line, node.column, "unknown identifier '" + name + "'");
    }
    case Kind::add:
      return evaluate_expression(ctx, node.children[0]) + evaluate_expression(ctx, node.children[1]);
    case Kind::sub:
      return evaluate_expression(ctx, node.children[0]) - evaluate_expression(ctx, node.children[1]);
    case Kind::neg:
      return -evaluate_expression(ctx, node.children[0]);
    case Kind::mul:
      return multiply(ctx, evaluate_expression(ctx, node.children[0]), evaluate_expression(ctx, node.children[1]));
    case Kind::div: {
      const PBWElement den = evaluate_expression(ctx, node.children[1]);
      auto g = as_group_multiple(den);
      if (!g || g->first != 0) throw ParseError(node.line, node.column, "division is only defined by scalars");
      return evaluate_expression(ctx, node.children[0]).scaled(g->second.inverse());
    }
    case Kind::pow: {
      const PBWElement base = evaluate_expression(ctx, node.children[0]);
      if (node.exponent >= 0) return power(ctx, base, static_cast<unsigned>(node.exponent));
      auto g = as_group_multiple(base);
      if (!g) throw ParseError(node.line, node.column, "negative power of a non-invertible element");
      const PBWElement inv = PBWElement::word(Word{ctx.group().inverse(g->first), Monomial(r, 0), Monomial(r, 0)},
                                              g->second.inverse());
      return power(ctx, inv, static_cast<unsigned>(-node.exponent));
    }
  }
  throw InternalInconsistency("unhandled expression node");
}

PBWElement parse_expression(const std::string& source, const AlgebraContext& ctx) {
  return evaluate_expression(ctx, syntax::parse(source));
}

std::string word_to_string(const Word& w) {
  std::vector<std::string> parts;
  if (w.g != 0) parts.push_back("g" + std::to_string(w.g));
  auto letters = [&](const Monomial& e, char v) {
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      std::string s = std::string(1, v) + std::to_string(i + 1);
      if (e[i] > 1) s += "^" + std::to_string(e[i]);
      parts.push_back(s);
    }
  };
  letters(w.m, 'y');
  letters(w.n, 'x');
  if (parts.empty()) return "1";
  std::string out = parts[0];
  for (std::size_t i = 1; i < parts.size(); ++i) out += "*" + parts[i];
  return out;
}

std::string format_combination(const std::vector<std::pair<Cyclo, std::string>>& terms) {
  std::string out;
  bool first = true;
  for (const auto& [c, word] : terms) {
    if (c.is_zero()) continue;
    std::string s = c.to_string();
    bool negative = false;
    std::string mag;
    if (s.find(' ') == std::string::npos) {
      negative = s[0] == '-';
      mag = negative ? s.substr(1) : s;
    } else {
      mag = "(" + s + ")";
    }
    std::string term;
    if (word == "1") {
      term = mag;
    } else if (mag == "1") {
      term = word;
    } else {
      term = mag + "*" + word;
    }
    if (first) {
      out = negative ? "-" + term : term;
      first = false;
    } else {
      out += negative ? " - " : " + ";
      out += term;
    }
  }
  return first ? "0" : out;
}

std::string to_expression(const AlgebraContext&, const PBWElement& e) {
  std::vector<std::pair<Cyclo, std::string>> terms;
  for (const auto& [w, c] : e.terms()) terms.emplace_back(c, word_to_string(w));
  return format_combination(terms);
}

}  // namespace cherednik
