#pragma once

// Rank one: H_c(Z/m, C) and the Laurent modules C[x^{+-1}] on which
//   y = d/dx + p(x) + sum_i 2 c_i / ((1 - lambda^i) x) (1 - s_i),
// with s_i x^j = lambda^{ij} x^j. Reducibility, ladders, singular cycles and
// the localization / extension functors.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cherednik/modules.hpp"
#include "cherednik/syntax.hpp"

namespace cherednik {

using syntax::LaurentPoly;

struct CyclicDatum {
  int m = 2;
  Cyclo lambda;           // zeta_m
  std::vector<Cyclo> c;   // c_1 .. c_{m-1}, c_i attached to s_i

  static CyclicDatum make(int m, std::vector<Cyclo> c);
  static CyclicDatum constant(int m, const Cyclo& c);

  // The algebra the Laurent module is a module over: Z/m with s_i acting on h by
  // lambda^{-i} (element index i) and parameter c'(s_i) = -c_i.
  ContextPtr algebra_context() const;
  // Same group with c(s_i) = c_i; used by the regularity probe.
  ContextPtr probe_context() const;
  // sum_i 2 c_i (1 - lambda^{it}) / (1 - lambda^i); zero when m divides t.
  Cyclo ladder_shift(long t) const;
};

// Throws InvalidInput unless x p lies in C[x^{+-m}].
void validate_twist(const CyclicDatum& datum, const LaurentPoly& p);
LaurentPoly times_x(const LaurentPoly& p, long shift = 1);

struct LaurentModule {
  CyclicDatum datum;
  LaurentPoly p;
  long k = 1;  // generated by x^{-k}
  bool zero = false;
  bool generation_verified = false;
  long verified_lo = 0;  // exponents verified to lie in the span generated by x^{-k}
  long verified_hi = 0;
};

inline constexpr long default_ladder_bound = 6;

// Chooses k (or checks the given one) and verifies generation of [-k-8, 8].
LaurentModule make_laurent_module(const CyclicDatum& datum, const LaurentPoly& p, std::optional<long> k = std::nullopt);
LaurentModule zero_laurent_module(const CyclicDatum& datum);

// Pole order of p (0 when p has no negative exponents).
long pole_order(const LaurentPoly& p);
// Image of v under y; exponents outside [lo, hi] raise BudgetExceeded.
LaurentPoly laurent_act_y(const LaurentModule& M, const LaurentPoly& v, long lo = -100000, long hi = 100000);
LaurentPoly laurent_act_s(const CyclicDatum& datum, long i, const LaurentPoly& v);

struct ReducibilityCertificate {
  bool reducible = false;
  Cyclo constant_term;         // of x p
  bool negative_terms = false; // x p has terms of negative degree
  std::optional<long> k;       // constant term = m k
  std::optional<long> ladder;  // the submodule x^{-mk} C[x]
};
ReducibilityCertificate is_reducible(const CyclicDatum& datum, const LaurentPoly& p);

struct TwistReduction {
  long k = 0;
  LaurentPoly reduced_scalar_part;  // p - m k x^{-1}
};
TwistReduction canonical_twist_reduction(const CyclicDatum& datum, const LaurentPoly& p);

struct LadderSearch {
  std::vector<long> ladders;
  long bound = 0;
};
// All t with |t| <= bound such that span{x^j : j >= t} is y-stable, by direct action.
LadderSearch find_stable_ladders(const LaurentModule& M, long bound = default_ladder_bound);

struct SingularCycle {
  std::map<std::string, long> components;  // "zero_section", "zero_fiber"
  long d = 0;
  long k = 0;
  bool good_filtration = false;
};
// Cycle of the geometric filtration F_i = x^{-k-di} C[x].
SingularCycle singular_cycle(const LaurentModule& M);
// Cycle of the subquotient span{x^j : lower <= j < upper} (nullopt = unbounded) with the induced filtration.
SingularCycle subquotient_cycle(const LaurentModule& M, std::optional<long> lower, std::optional<long> upper);

// Localization of a module over H_c(Z/m, C) built from a Verma module, a quotient
// supported at 0, or an extension by poles.
struct Localization {
  LaurentModule module;
  long shift = 0;  // x^j (x) tau corresponds to x^{j + shift}
};
Localization localize_j0(const ModulePtr& V);
// The Laurent module as an H_{c'}(Z/m, C)-module generated by x^{-k}, materialized
// on an exponent window large enough for J Bernstein steps.
ModulePtr extend_j0(const LaurentModule& M, int J = default_hilbert_window);
// The Laurent module carried by an extension-by-poles model, if V is one.
const LaurentModule* laurent_of(const ModuleModel& V);

struct PushforwardReport {
  HilbertData hilbert;
  GKReport gk;
  bool holonomic = false;
  bool falsification = false;
  std::string regularity;
};
// Requires c' regular (probe up to `bound`) and a valid twist.
PushforwardReport check_pushforward_holonomic(const CyclicDatum& datum, const LaurentPoly& p,
                                              int J = default_hilbert_window, int bound = 20);

}  // namespace cherednik
