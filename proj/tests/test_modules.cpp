#include <doctest.h>

#include "cherednik/errors.hpp"
#include "cherednik/modules.hpp"
#include "cherednik/params.hpp"

using namespace cherednik;

namespace {

ReflectionGroup named(const std::string& n) { return ReflectionGroup::close(builtin_group(n)); }

ContextPtr context(const std::string& n, const Rational& c) { return AlgebraContext::make(named(n), Cyclo(c)); }

long binomial(long n, long k) {
  long r = 1;
  for (long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

ModulePtr verma(const ContextPtr& ctx, std::size_t t = 0, int T = 40) {
  return build_verma({ctx, linear_characters(ctx->group()).at(t), T});
}

// The module of the H_{1/2}(Z/2, C + C) example: M_- (x) O  +  L (x) D(C).
ModulePtr example_module() {
  const auto c12 = context("cyclic:2", Rational(1, 2));
  const auto weyl = AlgebraContext::make(named("trivial:1"), Parameter{});
  const auto V = verma(c12, 0);
  std::vector<SparseVector> sing;
  for (const auto& s : find_singular_vectors(V, 10)) sing.push_back(s.vector);
  const auto L = build_verma_quotient(V, sing);
  const auto A = external_tensor(verma(c12, 1), verma(weyl, 0));
  const auto B = external_tensor(L, build_regular(weyl, 40));
  return direct_sum(A, B);
}

}  // namespace

TEST_SUITE("modules") {
  TEST_CASE("Bernstein dimensions match closed forms") {
    const int J = 12;
    for (const char* n : {"cyclic:2", "cyclic:3", "s3-reflection", "minus-id:2"}) {
      const auto ctx = context(n, Rational(1, 5));
      const auto V = verma(ctx);
      const auto h = bernstein_filtration_dims(*V, V->default_generators(), J);
      const long r = ctx->rank();
      for (int j = 0; j <= J; ++j) CHECK(h.dims[j] == binomial(j + r, r));
    }
    const auto ctx = context("cyclic:2", Rational(1, 3));
    const auto R = build_regular(ctx, 30);
    const auto h = bernstein_filtration_dims(*R, R->default_generators(), 10);
    for (int j = 0; j <= 10; ++j) CHECK(h.dims[j] == 2 * binomial(j + 2, 2));
  }

  TEST_CASE("GK table") {
    const auto ctx = context("cyclic:2", Rational(1, 3));
    const auto V = verma(ctx);
    CHECK(gk_dimension(bernstein_filtration_dims(*V, V->default_generators(), 24)).gk_dim == 1);
    const auto R = build_regular(ctx, 40);
    CHECK(gk_dimension(bernstein_filtration_dims(*R, R->default_generators(), 24)).gk_dim == 2);
    const auto c12 = context("cyclic:2", Rational(1, 2));
    const auto V12 = verma(c12);
    const auto sv = find_singular_vectors(V12, 10);
    REQUIRE(sv.size() == 1);
    const auto L = build_verma_quotient(V12, {sv[0].vector});
    const auto hl = bernstein_filtration_dims(*L, L->default_generators(), 24);
    CHECK(gk_dimension(hl).gk_dim == 0);
    CHECK(hl.dims.back() == 1);
  }

  TEST_CASE("GK dimension of synthetic sequences") {
    std::vector<long> quad, lin, cst;
    for (long j = 0; j <= 20; ++j) {
      quad.push_back(3 * j * j + j + 4);
      lin.push_back(j < 5 ? 1 : 2 * j - 3);
      cst.push_back(j < 3 ? j : 7);
    }
    const auto g2 = gk_dimension(quad);
    CHECK(g2.gk_dim == 2);
    CHECK(g2.leading_coefficient == Rational(3));
    CHECK(gk_dimension(lin).gk_dim == 1);
    CHECK(gk_dimension(lin).leading_coefficient == Rational(2));
    CHECK(gk_dimension(cst).gk_dim == 0);
  }

  TEST_CASE("singular vectors follow the Dunkl eigenvalues") {
    // y x^j = (j - 2c [j odd]) x^{j-1} on Verma(triv): singular at j = 2c for odd 2c > 0.
    const auto V = verma(context("cyclic:2", Rational(3, 2)), 0, 12);
    const auto sv = find_singular_vectors(V, 10);
    REQUIRE(sv.size() == 1);
    CHECK(sv[0].degree == 3);
    CHECK(sv[0].character == std::optional<std::size_t>(1));
    CHECK(find_singular_vectors(verma(context("cyclic:2", Rational(1, 3)), 0, 22), 20).empty());
    // sign Verma: y x^j = (j + 2c [j odd]) x^{j-1}
    const auto Vs = verma(context("cyclic:2", Rational(-1, 2)), 1, 12);
    const auto ss = find_singular_vectors(Vs, 10);
    REQUIRE(ss.size() == 1);
    CHECK(ss[0].degree == 1);
  }

  TEST_CASE("module relations hold") {
    for (const char* n : {"cyclic:3", "s3-reflection"}) {
      const auto ctx = context(n, Rational(2, 7));
      CHECK(check_module_relations(*verma(ctx), 8).failures == 0);
      CHECK(check_module_relations(*build_regular(ctx, 20), 3).failures == 0);
      CHECK(check_module_products(*verma(ctx), 20, 4, 6).failures == 0);
    }
    CHECK(check_module_relations(*example_module(), 8).failures == 0);
  }

  TEST_CASE("holonomicity") {
    const auto ctx = context("s3-reflection", Rational(1, 5));
    REQUIRE(establish_regularity(*ctx).regular());
    const auto V = verma(ctx);
    const auto h = bernstein_filtration_dims(*V, V->default_generators(), 16);
    CHECK(is_holonomic_regular(*V, h, true));
    CHECK_THROWS_AS(is_holonomic_regular(*V, h, false), InvalidInput);
    const auto R = build_regular(context("cyclic:2", Rational(1, 3)), 40);
    CHECK(holonomicity(*R, R->default_generators(), 20, true).verdict == Holonomicity::not_holonomic);
  }

  TEST_CASE("the C + C example has GK dimension 2 and is not holonomic") {
    const auto M = example_module();
    const auto rep = holonomicity(*M, M->default_generators(), 24, false);
    CHECK(rep.gk_dim == 2);
    CHECK(rep.verdict == Holonomicity::not_holonomic);
  }

  TEST_CASE("constructor preconditions") {
    const auto ctx = context("cyclic:2", Rational(1, 3));
    CHECK_THROWS_AS(external_tensor(verma(ctx), verma(ctx)), InvalidInput);
    CHECK_THROWS_AS(build_verma({ctx, Character{Cyclo(1), Cyclo(2)}, 10}), InvalidInput);
    CHECK_THROWS_AS(build_verma_quotient(build_regular(ctx, 10), {}), InvalidInput);
    const auto V = verma(ctx, 0, 5);
    CHECK_THROWS_AS(apply_x(*V, 0, SparseVector{{V->basis_up_to(5).back(), Cyclo(1)}}), BudgetExceeded);
  }
}
