#include <doctest.h>

#include <random>

#include "cherednik/errors.hpp"
#include "cherednik/scalars.hpp"
#include "cherednik/syntax.hpp"

using namespace cherednik;

TEST_SUITE("scalars") {
  TEST_CASE("roots of unity satisfy their cyclotomic relations") {
    const Cyclo z3 = Cyclo::root(3, 1);
    CHECK(z3 + z3 * z3 == Cyclo(-1));
    CHECK(z3.pow(3) == Cyclo(1));
    const Cyclo i = Cyclo::root(4, 1);
    CHECK(i * i == Cyclo(-1));
    CHECK(Cyclo::root(6, 1).pow(2) == Cyclo::root(6, 2));
    // 1 + z5 + ... + z5^4 = 0
    Cyclo sum(0);
    for (int k = 0; k < 5; ++k) sum += Cyclo::root(5, k);
    CHECK(sum.is_zero());
  }

  TEST_CASE("canonical form has phi(N) coefficients") {
    CHECK(Cyclo::root(12, 5).coefficients().size() == static_cast<std::size_t>(euler_phi(12)));
    CHECK(euler_phi(1) == 1);
    CHECK(euler_phi(9) == 6);
  }

  TEST_CASE("rationals mix with any order, other orders do not") {
    const Cyclo a(Rational(1, 2));
    const Cyclo z = Cyclo::root(5, 2);
    CHECK((a * z).order() == 5);
    CHECK_THROWS_AS(Cyclo::root(3, 1) + Cyclo::root(4, 1), InvalidInput);
    CHECK(Cyclo::root(3, 1).embed(6) == Cyclo::root(6, 2));
  }

  TEST_CASE("division by zero is rejected") {
    CHECK_THROWS_AS(Cyclo(0).inverse(), InvalidInput);
  }

  TEST_CASE("field axioms on random elements of Q(zeta_N)") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> coef(-5, 5), den(1, 4);
    for (int N : {3, 5, 8, 12}) {
      auto rand = [&] {
        std::vector<Rational> c(euler_phi(N));
        for (auto& x : c) x = Rational(coef(rng), den(rng));
        for (auto& x : c) x.canonicalize();
        return Cyclo::from_coefficients(N, c);
      };
      for (int t = 0; t < 30; ++t) {
        const Cyclo a = rand(), b = rand(), c = rand();
        CHECK(a * (b + c) == a * b + a * c);
        CHECK((a * b) * c == a * (b * c));
        if (!a.is_zero()) CHECK(a * a.inverse() == Cyclo(1));
        CHECK(a - a == Cyclo(0));
      }
    }
  }

  TEST_CASE("scalar text round-trips") {
    for (const char* s : {"1/2 + 1/3*z3^2", "-7/3", "z5 - z5^3", "0", "2*z8^3 + 1"}) {
      const Cyclo v = syntax::parse_scalar(s);
      CHECK(syntax::parse_scalar(v.to_string(), v.order()) == v);
    }
    CHECK(syntax::parse_scalar("z4^2") == Cyclo(-1));
    CHECK(syntax::parse_scalar("1/2 + 1/3*z3^2").order() == 3);
  }
}
