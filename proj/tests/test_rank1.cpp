#include <doctest.h>

#include "cherednik/errors.hpp"
#include "cherednik/params.hpp"
#include "cherednik/rank1.hpp"

using namespace cherednik;
using syntax::parse_laurent;

namespace {

CyclicDatum z2(const Rational& c = Rational(1, 3)) { return CyclicDatum::constant(2, Cyclo(c)); }
CyclicDatum z3() { return CyclicDatum::make(3, {Cyclo(Rational(1, 7)), Cyclo(Rational(1, 11))}); }

LaurentPoly P(const CyclicDatum& d, const std::string& s) { return parse_laurent(s, d.m); }

// Ladders of a twist with x p = a0 + (positive terms), by the closed form
// t + a0 + sum_i 2 c_i (1 - l^{it}) / (1 - l^i) = 0, evaluated independently.
std::vector<long> ladder_oracle(const CyclicDatum& d, const Cyclo& a0, long T) {
  std::vector<long> out;
  const Cyclo l = Cyclo::root(d.m, 1);
  for (long t = -T; t <= T; ++t) {
    Cyclo v = Cyclo(t) + a0;
    for (int i = 1; i < d.m; ++i) {
      const Cyclo li = l.pow(i);
      const Cyclo lit = l.pow(((i * t) % d.m + d.m) % d.m);
      v += Cyclo(2) * d.c[i - 1] * (Cyclo(1) - lit) / (Cyclo(1) - li);
    }
    if (v.is_zero()) out.push_back(t);
  }
  return out;
}

}  // namespace

TEST_SUITE("rank1") {
  TEST_CASE("y on Laurent monomials") {
    const auto d = z2();
    const auto M0 = make_laurent_module(d, {});
    CHECK(laurent_act_y(M0, P(d, "1")).empty());
    const auto img = laurent_act_y(M0, P(d, "x^-1"));
    REQUIRE(img.size() == 1);
    CHECK(img.at(-2) == Cyclo(Rational(-1, 3)));
    const auto Mx = make_laurent_module(d, P(d, "x"));
    CHECK(laurent_act_y(Mx, P(d, "1")) == P(d, "x"));
    CHECK_THROWS_AS(laurent_act_y(M0, P(d, "x^-1"), -1, 5), BudgetExceeded);
  }

  TEST_CASE("the Laurent operator realizes [y, x] = 1 - 2 sum c'(s) s with c' = -c") {
    for (const auto& d : {z2(), z3(), CyclicDatum::make(4, {Cyclo(Rational(1, 2)), Cyclo(Rational(-2, 3)), Cyclo(5)})}) {
      const auto M = make_laurent_module(d, P(d, "x^-1 + x^" + std::to_string(2 * d.m - 1)));
      const auto ctx = d.algebra_context();
      for (long j = -12; j <= 12; ++j) {
        const auto v = P(d, "x^" + std::to_string(j));
        LaurentPoly lhs = laurent_act_y(M, times_x(v));
        for (const auto& [e, c] : times_x(laurent_act_y(M, v))) {
          lhs[e] -= c;
          if (lhs[e].is_zero()) lhs.erase(e);
        }
        LaurentPoly rhs = v;
        for (std::size_t s = 0; s < ctx->reflections().size(); ++s) {
          const auto& r = ctx->reflections()[s];
          for (const auto& [e, c] : laurent_act_s(d, r.element, v)) {
            rhs[e] -= Cyclo(2) * ctx->c_of(s) * c;
            if (rhs[e].is_zero()) rhs.erase(e);
          }
        }
        CHECK(lhs == rhs);
      }
    }
  }

  TEST_CASE("reducibility criterion") {
    const auto c3 = is_reducible(CyclicDatum::constant(3, Cyclo(Rational(1, 3))), {});
    CHECK(c3.reducible);
    CHECK(c3.k == std::optional<long>(0));
    CHECK_FALSE(is_reducible(z2(), P(z2(), "x^-1")).reducible);
    const auto c2 = is_reducible(z2(), P(z2(), "2*x^-1 + x"));
    CHECK(c2.reducible);
    CHECK(c2.k == std::optional<long>(1));
    CHECK(c2.ladder == std::optional<long>(-2));
    CHECK_FALSE(is_reducible(z2(), P(z2(), "2*x^-1 + x^-3")).reducible);
    CHECK_FALSE(is_reducible(z3(), P(z3(), "1/2*x^-1")).reducible);
    CHECK_THROWS_AS(is_reducible(z2(), P(z2(), "x^-2")), InvalidInput);
  }

  TEST_CASE("basis change") {
    const auto r = canonical_twist_reduction(z2(), P(z2(), "2*x^-1"));
    CHECK(r.k == 1);
    CHECK(r.reduced_scalar_part.empty());
    const auto r3 = canonical_twist_reduction(z3(), {});
    CHECK(r3.k == 0);
    CHECK(r3.reduced_scalar_part.empty());
    CHECK_THROWS_AS(canonical_twist_reduction(z2(), P(z2(), "x^-1")), InvalidInput);
    // after the change x^i -> x^{i+mk} the ladder moves to C[x]
    const auto d = z2();
    const auto red = canonical_twist_reduction(d, P(d, "4*x^-1 + x"));
    const auto shifted = make_laurent_module(d, red.reduced_scalar_part);
    const auto L = find_stable_ladders(shifted, 6);
    CHECK(L.ladders == std::vector<long>{0});
  }

  TEST_CASE("ladder search matches the closed form") {
    const auto d = z2();
    CHECK(find_stable_ladders(make_laurent_module(d, {}), 6).ladders == std::vector<long>{0});
    CHECK(find_stable_ladders(make_laurent_module(d, P(d, "x^-1")), 6).ladders.empty());
    CHECK(find_stable_ladders(make_laurent_module(d, P(d, "2*x^-1")), 6).ladders == std::vector<long>{-2});
    for (const auto& dd : {z2(), z3(), z2(Rational(1, 5))}) {
      for (int a = 0; a <= 2 * dd.m; ++a) {
        const auto p = P(dd, std::to_string(a) + "*x^-1 + x^" + std::to_string(dd.m - 1));
        const auto L = find_stable_ladders(make_laurent_module(dd, p), 8);
        CHECK(L.ladders == ladder_oracle(dd, Cyclo(a), 8));
      }
    }
    // at the special value 2c = 1 an odd ladder appears
    const auto special = z2(Rational(1, 2));
    CHECK(find_stable_ladders(make_laurent_module(special, P(special, "-2*x^-1")), 6).ladders ==
          ladder_oracle(special, Cyclo(-2), 6));
  }

  TEST_CASE("ladders are submodules, coherent over C[x]") {
    const auto d = z3();
    const auto M = make_laurent_module(d, P(d, "3*x^-1 + x^2"));
    const auto L = find_stable_ladders(M, 6);
    REQUIRE(L.ladders == std::vector<long>{-3});
    const long t = L.ladders[0];
    for (long j = t; j < t + 20; ++j) {
      const auto v = P(d, "x^" + std::to_string(j));
      for (const auto& [e, c] : laurent_act_y(M, v)) CHECK(e >= t);
      for (const auto& [e, c] : times_x(v)) CHECK(e >= t);
      for (long i = 1; i < d.m; ++i) CHECK(laurent_act_s(d, i, v).begin()->first == j);
    }
  }

  TEST_CASE("singular cycles") {
    auto cycle = [](const CyclicDatum& d, const std::string& p) { return singular_cycle(make_laurent_module(d, P(d, p))); };
    const std::map<std::string, long> one{{"zero_fiber", 1}, {"zero_section", 1}};
    CHECK(cycle(z2(), "x").components == one);
    CHECK(cycle(CyclicDatum::constant(3, Cyclo(Rational(1, 3))), "0").components == one);
    CHECK(cycle(z2(), "x^-1").good_filtration);
    CHECK(singular_cycle(zero_laurent_module(z2())).components.empty());
    // pole order 3: gr_i has dimension 3 and the fiber carries multiplicity 3
    const auto irregular = cycle(z2(), "x^-3");
    CHECK(irregular.good_filtration);
    CHECK(irregular.components.at("zero_fiber") == 3);
    CHECK(irregular.components.at("zero_section") == 1);
  }

  TEST_CASE("cycles are additive along ladders") {
    for (const auto& [d, p] : {std::pair{z2(), std::string("2*x^-1 + x")}, std::pair{z3(), std::string("6*x^-1")},
                               std::pair{z2(), std::string("0")}}) {
      const auto M = make_laurent_module(d, P(d, p));
      const auto cert = is_reducible(d, P(d, p));
      REQUIRE(cert.ladder);
      const auto whole = singular_cycle(M).components;
      auto sub = subquotient_cycle(M, *cert.ladder, std::nullopt).components;
      const auto quo = subquotient_cycle(M, std::nullopt, *cert.ladder).components;
      CHECK(sub == std::map<std::string, long>{{"zero_section", 1}});
      CHECK(quo == std::map<std::string, long>{{"zero_fiber", 1}});
      for (const auto& [k, v] : quo) sub[k] += v;
      CHECK(sub == whole);
    }
  }

  TEST_CASE("generator exponent grows past ladders") {
    const auto M = make_laurent_module(CyclicDatum::constant(3, Cyclo(Rational(1, 7))), P(z3(), "6*x^-1"));
    CHECK(M.k == 8);
    CHECK(M.generation_verified);
    CHECK_THROWS_AS(make_laurent_module(CyclicDatum::constant(3, Cyclo(Rational(1, 7))), P(z3(), "6*x^-1"), 5),
                    InvalidInput);
  }

  TEST_CASE("localization and extension") {
    const auto d = z2();
    const auto ctx = d.algebra_context();
    const auto chars = linear_characters(ctx->group());
    const auto V = build_verma({ctx, chars[0], 30});
    const auto loc = localize_j0(V);
    CHECK(loc.module.p.empty());
    CHECK(loc.shift == 0);
    // finite-dimensional quotient at c' = 1/2 localizes to zero
    const auto half = z2(Rational(-1, 2)).algebra_context();
    const auto Vh = build_verma({half, linear_characters(half->group())[0], 30});
    std::vector<SparseVector> sing;
    for (const auto& s : find_singular_vectors(Vh, 10)) sing.push_back(s.vector);
    REQUIRE(sing.size() == 1);
    CHECK(localize_j0(build_verma_quotient(Vh, sing)).module.zero);
    // section property
    const auto M = make_laurent_module(d, P(d, "x^-3 + x"));
    const auto back = localize_j0(extend_j0(M, 12));
    CHECK(back.module.p == M.p);
    CHECK(back.module.k == M.k);
    CHECK_THROWS_AS(localize_j0(build_regular(AlgebraContext::make(ReflectionGroup::close(builtin_group("s3-reflection")),
                                                                   Cyclo(0)),
                                              5)),
                    InvalidInput);
  }

  TEST_CASE("extension of the p = 0 module contains the polynomial representation") {
    const auto d = z3();
    const auto E = extend_j0(make_laurent_module(d, {}), 24);
    const auto ctx = E->context_ptr();
    const auto V = build_verma({ctx, linear_characters(ctx->group())[0], 30});
    auto lab = [&](long e) {
      for (auto l : E->basis_up_to(40))
        if (E->label_name(l) == (e == 0 ? "1" : e == 1 ? "x" : "x^" + std::to_string(e))) return l;
      FAIL("label not found");
      return std::size_t{0};
    };
    for (auto l : V->basis_up_to(10)) {
      const long n = V->degree(l);
      const auto vy = V->act_y(0, l);
      const auto ey = E->act_y(0, lab(n));
      CHECK(vy.size() == ey.size());
      if (n > 0) CHECK(vy.begin()->second == ey.begin()->second);
      for (std::size_t g = 0; g < ctx->group().order(); ++g)
        CHECK(V->act_g(g, l).begin()->second == E->act_g(g, lab(n)).begin()->second);
    }
    CHECK(check_module_relations(*E, 10).failures == 0);
  }

  TEST_CASE("Bernstein dimensions of extensions grow linearly") {
    const auto d = z2();
    const auto E = extend_j0(make_laurent_module(d, P(d, "x^-1"), 1), 16);
    const auto h = bernstein_filtration_dims(*E, E->default_generators(), 16);
    for (std::size_t j = 1; j < h.dims.size(); ++j) CHECK(h.dims[j] - h.dims[j - 1] <= 2);
    CHECK(gk_dimension(h).gk_dim == 1);
    const auto Z = extend_j0(zero_laurent_module(d), 8);
    CHECK(Z->default_generators().empty());
    CHECK(Z->basis_up_to(8).empty());
  }

  TEST_CASE("pushforward check") {
    const auto rep = check_pushforward_holonomic(z2(), P(z2(), "x^-1"));
    CHECK(rep.gk.gk_dim == 1);
    CHECK(rep.holonomic);
    CHECK_FALSE(rep.falsification);
    CHECK_THROWS_WITH_AS(check_pushforward_holonomic(z2(Rational(1, 2)), {}), doctest::Contains("regular parameter required"),
                         InvalidInput);
    CHECK_THROWS_AS(check_pushforward_holonomic(z2(), P(z2(), "1")), InvalidInput);
  }
}
