#include "cherednik/rank1.hpp"

#include <algorithm>
#include <deque>

#include "cherednik/params.hpp"

namespace cherednik {

namespace {

long mod(long a, long m) { return ((a % m) + m) % m; }

Cyclo root_power(int m, long e) { return Cyclo::root(m, mod(e, m)); }

void add_term(LaurentPoly& p, long e, const Cyclo& c) {
  if (c.is_zero()) return;
  auto [it, fresh] = p.emplace(e, c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) p.erase(it);
  }
}

long lowest_exponent(const LaurentPoly& p) {
  for (const auto& [e, c] : p)
    if (!c.is_zero()) return e;
  return 0;
}

long highest_exponent(const LaurentPoly& p) {
  for (auto it = p.rbegin(); it != p.rend(); ++it)
    if (!it->second.is_zero()) return it->first;
  return 0;
}

long step_down(const LaurentModule& M) { return std::max<long>(1, pole_order(M.p)); }
long step_up(const LaurentModule& M) { return std::max<long>(1, highest_exponent(M.p)); }

LaurentPoly monomial(long e) { return LaurentPoly{{e, Cyclo(1)}}; }

SparseVector to_sparse(const LaurentPoly& v, long lo) {
  SparseVector out;
  for (const auto& [e, c] : v)
    if (!c.is_zero()) out.emplace(static_cast<std::size_t>(e - lo), c);
  return out;
}

// Generation of [-k-8, 8] by x^{-k}, computed modulo x^H C[x] (which lies in the
// submodule). Vectors whose y-image leaves the window are skipped, so the span
// found is contained in the true submodule.
bool verify_generation(const LaurentModule& M, long k) {
  const long H = 9;
  const long lo = -k - 8 - 2 * M.datum.m * step_down(M) - 8;
  EchelonBasis span;
  std::deque<LaurentPoly> queue;
  auto push = [&](LaurentPoly v) {
    for (auto it = v.begin(); it != v.end();) it = (it->first >= H || it->second.is_zero()) ? v.erase(it) : std::next(it);
    if (v.empty() || v.begin()->first < lo) return;
    if (span.insert(to_sparse(v, lo))) queue.push_back(std::move(v));
  };
  for (long j = -k; j < H; ++j) push(monomial(j));
  while (!queue.empty()) {
    const LaurentPoly v = std::move(queue.front());
    queue.pop_front();
    push(laurent_act_y(M, v));
    push(times_x(v));
    push(laurent_act_s(M.datum, 1, v));
  }
  for (long j = -k - 8; j <= 8; ++j)
    if (!span.contains(to_sparse(monomial(j), lo))) return false;
  return true;
}

}  // namespace

CyclicDatum CyclicDatum::make(int m, std::vector<Cyclo> c) {
  if (m < 2) throw InvalidInput("cyclic datum needs m >= 2");
  if (static_cast<int>(c.size()) != m - 1) throw InvalidInput("cyclic datum needs m - 1 parameters c_1 .. c_{m-1}");
  CyclicDatum d;
  d.m = m;
  d.lambda = Cyclo::root(m, 1);
  for (auto& v : c) {
    if (v.order() != 1 && m % v.order() != 0) throw InvalidInput("parameter does not lie in Q(zeta_m)");
    d.c.push_back(v.order() == 1 ? v : v.embed(m));
  }
  return d;
}

CyclicDatum CyclicDatum::constant(int m, const Cyclo& c) { return make(m, std::vector<Cyclo>(std::max(m - 1, 0), c)); }

namespace {

ContextPtr cyclic_context(const CyclicDatum& d, int sign) {
  GroupSpec spec;
  spec.name = "cyclic:" + std::to_string(d.m);
  spec.cyclotomic_order = d.m;
  spec.rank = 1;
  spec.generators.push_back(Matrix::from_rows({{Cyclo::root(d.m, d.m - 1)}}));
  if (d.m == 2) spec.degrees = std::vector<int>{2};
  auto group = ReflectionGroup::close(spec);
  Parameter param;
  for (const auto& r : find_reflections(group)) {
    // element index i is s_i = (lambda^{-1})^i on h
    param.values[r.class_id] = sign > 0 ? d.c.at(r.element - 1) : -d.c.at(r.element - 1);
  }
  return AlgebraContext::make(std::move(group), std::move(param));
}

}  // namespace

ContextPtr CyclicDatum::algebra_context() const { return cyclic_context(*this, -1); }
ContextPtr CyclicDatum::probe_context() const { return cyclic_context(*this, 1); }

Cyclo CyclicDatum::ladder_shift(long t) const {
  Cyclo r(0);
  for (int i = 1; i < m; ++i) {
    const Cyclo num = Cyclo(1) - root_power(m, static_cast<long>(i) * t);
    if (num.is_zero()) continue;
    r += Cyclo(2) * c[i - 1] * num / (Cyclo(1) - root_power(m, i));
  }
  return r;
}

LaurentPoly times_x(const LaurentPoly& p, long shift) {
  LaurentPoly out;
  for (const auto& [e, c] : p)
    if (!c.is_zero()) out.emplace(e + shift, c);
  return out;
}

void validate_twist(const CyclicDatum& datum, const LaurentPoly& p) {
  for (const auto& [e, c] : p) {
    if (c.is_zero()) continue;
    if (mod(e + 1, datum.m) != 0)
      throw InvalidInput("twist is not W-invariant: x*p has a term x^" + std::to_string(e + 1) +
                         " outside C[x^{+-" + std::to_string(datum.m) + "}]");
    if (c.order() != 1 && datum.m % c.order() != 0) throw InvalidInput("twist coefficient does not lie in Q(zeta_m)");
  }
}

long pole_order(const LaurentPoly& p) { return std::max<long>(0, -lowest_exponent(p)); }

LaurentPoly laurent_act_y(const LaurentModule& M, const LaurentPoly& v, long lo, long hi) {
  LaurentPoly out;
  if (M.zero) return out;
  for (const auto& [j, a] : v) {
    if (a.is_zero()) continue;
    add_term(out, j - 1, a * (Cyclo(j) + M.datum.ladder_shift(j)));
    for (const auto& [e, pe] : M.p) add_term(out, j + e, a * pe);
  }
  if (!out.empty() && (out.begin()->first < lo || out.rbegin()->first > hi))
    throw BudgetExceeded("Laurent action leaves the exponent window [" + std::to_string(lo) + ", " +
                         std::to_string(hi) + "]");
  return out;
}

LaurentPoly laurent_act_s(const CyclicDatum& datum, long i, const LaurentPoly& v) {
  LaurentPoly out;
  for (const auto& [j, a] : v) add_term(out, j, a * root_power(datum.m, i * j));
  return out;
}

LaurentModule zero_laurent_module(const CyclicDatum& datum) {
  LaurentModule M;
  M.datum = datum;
  M.zero = true;
  M.k = 0;
  M.generation_verified = true;
  return M;
}

LaurentModule make_laurent_module(const CyclicDatum& datum, const LaurentPoly& p, std::optional<long> k) {
  validate_twist(datum, p);
  LaurentModule M;
  M.datum = datum;
  for (const auto& [e, c] : p)
    if (!c.is_zero()) M.p.emplace(e, c.order() == 1 ? c : c.embed(datum.m));
  if (k) {
    M.k = *k;
    M.generation_verified = verify_generation(M, *k);
    if (!M.generation_verified)
      throw InvalidInput("x^" + std::to_string(-*k) + " does not generate the Laurent module");
  } else {
    const long start = std::max<long>(1, pole_order(M.p)) + 4;
    for (int attempt = 0; attempt < 32 && !M.generation_verified; ++attempt) {
      M.k = start + attempt * datum.m;
      M.generation_verified = verify_generation(M, M.k);
    }
    if (!M.generation_verified) throw BudgetExceeded("no generator x^{-k} found for the Laurent module");
  }
  M.verified_lo = -M.k - 8;
  M.verified_hi = 8;
  return M;
}

ReducibilityCertificate is_reducible(const CyclicDatum& datum, const LaurentPoly& p) {
  validate_twist(datum, p);
  ReducibilityCertificate cert;
  const LaurentPoly xp = times_x(p);
  cert.constant_term = xp.count(0) ? xp.at(0) : Cyclo(0);
  for (const auto& [e, c] : xp)
    if (e < 0 && !c.is_zero()) cert.negative_terms = true;
  if (cert.negative_terms || !cert.constant_term.is_rational()) return cert;
  const Rational a0 = cert.constant_term.rational_value();
  if (a0.get_den() != 1) return cert;
  const Integer num = a0.get_num();
  if (num % datum.m != 0) return cert;
  const Integer kk = num / datum.m;
  if (!kk.fits_slong_p()) throw BudgetExceeded("constant term too large");
  cert.reducible = true;
  cert.k = kk.get_si();
  cert.ladder = -datum.m * *cert.k;
  return cert;
}

TwistReduction canonical_twist_reduction(const CyclicDatum& datum, const LaurentPoly& p) {
  const auto cert = is_reducible(datum, p);
  if (!cert.reducible)
    throw InvalidInput("twist is irreducible: x*p has constant term " + cert.constant_term.to_string() +
                       (cert.negative_terms ? " and terms of negative degree" : ", not a multiple of m"));
  TwistReduction out;
  out.k = *cert.k;
  out.reduced_scalar_part = p;
  add_term(out.reduced_scalar_part, -1, Cyclo(-datum.m * out.k));
  return out;
}

LadderSearch find_stable_ladders(const LaurentModule& M, long bound) {
  LadderSearch out;
  out.bound = bound;
  if (M.zero) return out;
  const long span = 2 * M.datum.m + pole_order(M.p) + highest_exponent(M.p) + 2;
  for (long t = -bound; t <= bound; ++t) {
    bool stable = true;
    // Coefficients depend on j mod m and on the fixed shape of p, so a stretch of
    // 2m + deg-span exponents exhibits every pattern.
    for (long j = t; j <= t + span && stable; ++j) {
      for (const auto& [e, c] : laurent_act_y(M, monomial(j)))
        if (e < t && !c.is_zero()) stable = false;
    }
    if (stable) out.ladders.push_back(t);
  }
  return out;
}

namespace {

// gr_i of the filtration induced on span{x^j : lower <= j < upper} by F_i = x^{-k-di} C[x],
// as an exponent range [a, b). For i = 0 the range may be unbounded above.
struct Range {
  long a, b;
  bool unbounded;
};

Range graded_piece(long k, long d, long i, std::optional<long> lower, std::optional<long> upper) {
  long a = -k - d * i;
  long b = i == 0 ? 0 : -k - d * (i - 1);
  bool unbounded = i == 0;
  if (lower) a = std::max(a, *lower);
  if (upper) {
    if (unbounded) {
      b = *upper;
      unbounded = false;
    } else {
      b = std::min(b, *upper);
    }
  }
  if (!unbounded && b < a) b = a;
  return {a, b, unbounded};
}

}  // namespace

SingularCycle subquotient_cycle(const LaurentModule& M, std::optional<long> lower, std::optional<long> upper) {
  SingularCycle out;
  out.k = M.k;
  out.d = step_down(M);
  if (M.zero) {
    out.good_filtration = true;
    return out;
  }
  const long d = out.d;
  const long k = M.k;
  const int probes = 8;

  // Goodness: y F_i in F_{i+1}, x F_i in F_i, and the y-symbol gr_i -> gr_{i+1} onto for i >= 1,
  // with gr_1 = C[x]-span of y gr_0. Checked on the full module.
  bool good = true;
  for (long i = 1; i <= probes && good; ++i) {
    const long top = -k - d * (i - 1);
    EchelonBasis image;
    for (long j = -k - d * i; j < top; ++j) {
      LaurentPoly w;
      for (const auto& [e, c] : laurent_act_y(M, monomial(j)))
        if (e < -k - d * i) {
          if (e < -k - d * (i + 1)) good = false;
          w.emplace(e, c);
        }
      image.insert(to_sparse(w, -k - d * (probes + 2)));
    }
    if (static_cast<long>(image.size()) != d) good = false;
  }
  {
    EchelonBasis image;
    const long lo = -k - d * (probes + 2);
    for (long j = -k; j < -k + d + pole_order(M.p) + 2 * M.datum.m; ++j) {
      LaurentPoly w;
      for (const auto& [e, c] : laurent_act_y(M, monomial(j)))
        if (e < -k) {
          if (e < -k - d) good = false;
          w.emplace(e, c);
        }
      // x acts on gr_1 by shifting up, dropping into F_0
      for (long s = 0; s < d && !w.empty(); ++s) {
        image.insert(to_sparse(w, lo));
        LaurentPoly up;
        for (const auto& [e, c] : w)
          if (e + 1 < -k) up.emplace(e + 1, c);
        w = std::move(up);
      }
    }
    if (static_cast<long>(image.size()) != d) good = false;
  }
  out.good_filtration = good;

  // Zero section: gr_0 is free of rank one over C[x] when the piece is unbounded above.
  const Range r0 = graded_piece(k, d, 0, lower, upper);
  if (r0.unbounded) out.components["zero_section"] = 1;
  // Zero fiber: the stable dimension of gr_i, on which the y-symbol acts invertibly.
  long stable = -1;
  for (long i = probes; i <= probes + 2; ++i) {
    const Range r = graded_piece(k, d, i, lower, upper);
    const long dim = r.b - r.a;
    if (stable >= 0 && dim != stable) throw InternalInconsistency("graded dimensions do not stabilize");
    stable = dim;
  }
  if (stable > 0) out.components["zero_fiber"] = stable;
  return out;
}

SingularCycle singular_cycle(const LaurentModule& M) { return subquotient_cycle(M, std::nullopt, std::nullopt); }

// ---------------------------------------------------------------------------
// Extension by poles as an H_{c'}-module on an exponent window.

namespace {

class ExtendedModule final : public ModuleModel {
 public:
  ExtendedModule(LaurentModule M, int J)
      : ModuleModel(M.datum.algebra_context(), J), M_(std::move(M)) {
    margin_ = 2 * (step_down(M_) + step_up(M_) + M_.datum.m) + 4;
    lo_ = -M_.k - static_cast<long>(J + 2) * step_down(M_) - margin_;
    hi_ = -M_.k + static_cast<long>(J + 2) * step_up(M_) + margin_;
  }

  std::string kind() const override { return "laurent"; }
  const LaurentModule& laurent() const noexcept { return M_; }

  SparseVector act_x(std::size_t, std::size_t label) const override {
    const long e = exponent(label) + 1;
    if (e > hi_) throw BudgetExceeded("Laurent module: exponent " + std::to_string(e) + " leaves the window");
    return {{static_cast<std::size_t>(e - lo_), Cyclo(1)}};
  }
  SparseVector act_y(std::size_t, std::size_t label) const override {
    return to_sparse(laurent_act_y(M_, monomial(exponent(label)), lo_, hi_), lo_);
  }
  SparseVector act_g(std::size_t g, std::size_t label) const override {
    const long e = exponent(label);
    return {{label, root_power(M_.datum.m, static_cast<long>(g) * e)}};
  }
  int degree(std::size_t label) const override { return static_cast<int>(std::labs(exponent(label) + M_.k)); }
  std::string label_name(std::size_t label) const override {
    const long e = exponent(label);
    return e == 0 ? "1" : e == 1 ? "x" : "x^" + std::to_string(e);
  }
  std::vector<std::size_t> basis_up_to(int d) const override {
    std::vector<std::size_t> out;
    if (M_.zero) return out;
    const long a = std::max(lo_ + margin_, -M_.k - d);
    const long b = std::min(hi_ - margin_, -M_.k + d);
    for (long e = a; e <= b; ++e) out.push_back(static_cast<std::size_t>(e - lo_));
    return out;
  }
  std::vector<SparseVector> default_generators() const override {
    if (M_.zero) return {};
    return {SparseVector{{static_cast<std::size_t>(-M_.k - lo_), Cyclo(1)}}};
  }

 private:
  long exponent(std::size_t label) const { return static_cast<long>(label) + lo_; }

  LaurentModule M_;
  long lo_ = 0, hi_ = 0, margin_ = 0;
};

// Exponent e with g.x = zeta_m^e x, for every element of a rank-1 cyclic group.
std::vector<long> dual_exponents(const ReflectionGroup& group, int m) {
  std::vector<long> out(group.order(), -1);
  for (std::size_t g = 0; g < group.order(); ++g) {
    const Cyclo v = group.dual_element(g)(0, 0);
    for (long e = 0; e < m; ++e) {
      if (root_power(m, e) == (v.order() == 1 ? v : v.embed(m))) out[g] = e;
    }
    if (out[g] < 0) throw InvalidInput("group element is not a power of zeta_m");
  }
  return out;
}

bool supported_at_zero(const ModuleModel& V) {
  const int T = V.truncation();
  const auto basis = V.basis_up_to(T / 2);
  if (basis.empty()) return true;
  for (auto label : basis) {
    SparseVector v{{label, Cyclo(1)}};
    int steps = 0;
    try {
      while (!is_zero(v) && steps <= T) {
        v = apply_x(V, 0, v);
        ++steps;
      }
    } catch (const BudgetExceeded&) {
      return false;
    }
    if (!is_zero(v)) return false;
  }
  return true;
}

}  // namespace

const LaurentModule* laurent_of(const ModuleModel& V) {
  if (auto e = dynamic_cast<const ExtendedModule*>(&V)) return &e->laurent();
  return nullptr;
}

ModulePtr extend_j0(const LaurentModule& M, int J) {
  if (J < 1) throw InvalidInput("extension window must be positive");
  return std::make_shared<ExtendedModule>(M, J);
}

Localization localize_j0(const ModulePtr& V) {
  if (!V) throw InvalidInput("no module");
  if (auto L = laurent_of(*V)) return {*L, 0};
  const auto& ctx = V->context();
  const auto& group = ctx.group();
  if (ctx.rank() != 1 || !group.is_abelian() || group.order() < 2)
    throw InvalidInput("localization is implemented for H_c(Z/m, C), m >= 2");
  const int m = static_cast<int>(group.order());
  const auto ex = dual_exponents(group, m);
  std::vector<std::size_t> s_of(m, 0);  // s_i: element acting on x by zeta_m^i
  for (std::size_t g = 0; g < group.order(); ++g) s_of[ex[g]] = g;
  std::vector<Cyclo> c(m - 1);
  for (int i = 1; i < m; ++i) {
    const auto pos = ctx.reflection_position(s_of[i]);
    if (!pos) throw InvalidInput("group is not cyclic of order m acting faithfully");
    c[i - 1] = -ctx.c_of(*pos);
  }
  const auto datum = CyclicDatum::make(m, c);

  if (V->kind() == "verma") {
    const Character* tau = verma_character(*V);
    if (!tau) throw InternalInconsistency("Verma module without a character");
    long q = -1;
    const Cyclo t1 = (*tau)[s_of[1]];
    for (long e = 0; e < m; ++e)
      if (root_power(m, e) == (t1.order() == 1 ? t1 : t1.embed(m))) q = e;
    if (q < 0) throw InvalidInput("character value is not a power of zeta_m");
    // y x^j (x) tau = kappa(j) x^{j-1} (x) tau, and kappa(0) = 0 fixes the constant term of x p.
    const Cyclo a0 = -Cyclo(q) - datum.ladder_shift(q);
    LaurentPoly p;
    add_term(p, -1, a0);
    LaurentModule L = make_laurent_module(datum, p);
    const auto basis = V->basis_up_to(std::min(V->truncation() - 1, 12));
    for (auto label : basis) {
      const long j = V->degree(label);
      const auto image = V->act_y(0, label);
      const Cyclo expected = Cyclo(j + q) + a0 + datum.ladder_shift(j + q);
      Cyclo kappa(0);
      for (const auto& [l, v] : image) kappa += v;  // rank 1: the image is a multiple of x^{j-1}
      if (kappa != (j == 0 ? Cyclo(0) : expected))
        throw InternalInconsistency("localization does not match the Verma action at degree " + std::to_string(j));
    }
    return {L, q};
  }
  if (supported_at_zero(*V)) return {zero_laurent_module(datum), 0};
  throw InvalidInput("localization of a '" + V->kind() + "' module is not supported");
}

PushforwardReport check_pushforward_holonomic(const CyclicDatum& datum, const LaurentPoly& p, int J, int bound) {
  validate_twist(datum, p);
  const auto verdict = establish_regularity(*datum.algebra_context(), bound);
  if (!verdict.regular()) throw InvalidInput("regular parameter required: c' = -c is not regular");
  PushforwardReport out;
  out.regularity = to_string(verdict.status);
  const auto L = make_laurent_module(datum, p);
  const auto V = extend_j0(L, J);
  out.hilbert = bernstein_filtration_dims(*V, V->default_generators(), J);
  out.gk = gk_dimension(out.hilbert);
  out.holonomic = is_holonomic_regular(*V, out.hilbert, true);
  out.falsification = !out.holonomic || out.gk.gk_dim != 1;
  return out;
}

}  // namespace cherednik
