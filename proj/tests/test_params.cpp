#include <doctest.h>

#include "cherednik/errors.hpp"
#include "cherednik/params.hpp"

using namespace cherednik;

TEST_SUITE("params") {
  TEST_CASE("degree criterion") {
    const auto a = is_regular_by_degrees({2}, Rational(1, 2));
    CHECK(a.status == Regularity::not_regular);
    REQUIRE(a.degree_witness);
    CHECK(a.degree_witness->first == 1);
    CHECK(a.degree_witness->second == 2);
    const auto b = is_regular_by_degrees({2, 3}, Rational(1, 3));
    CHECK(b.status == Regularity::not_regular);
    CHECK(b.degree_witness->second == 3);
    CHECK(is_regular_by_degrees({2, 3}, Rational(1, 5)).status == Regularity::regular);
    CHECK(is_regular_by_degrees({2, 3}, Rational(0)).status == Regularity::regular);
    CHECK(is_regular_by_degrees({2, 3}, Rational(2, 3)).status == Regularity::not_regular);
    CHECK(is_regular_by_degrees({2, 3}, Rational(1)).status == Regularity::regular);
  }

  TEST_CASE("probe") {
    const auto v = regularity_probe_rank1(CyclicDatum::constant(2, Cyclo(Rational(1, 2))), 10);
    CHECK(v.status == Regularity::not_regular);
    REQUIRE(v.singular_witness);
    CHECK(v.singular_witness->degree == 1);
    CHECK(v.witness_character == std::optional<std::size_t>(0));
    CHECK(regularity_probe_rank1(CyclicDatum::constant(2, Cyclo(Rational(1, 3))), 20).status ==
          Regularity::regular_up_to_bound);
    CHECK(regularity_probe_rank1(CyclicDatum::constant(2, Cyclo(0)), 20).status == Regularity::regular_up_to_bound);
  }

  TEST_CASE("degree criterion and probe agree on Z/2") {
    for (int k = -9; k <= 9; ++k) {
      CAPTURE(k);
      const Rational c(k, 2);
      const bool odd = k % 2 != 0;
      CHECK(is_regular_by_degrees({2}, c).regular() == !odd);
      CHECK(regularity_probe_rank1(CyclicDatum::constant(2, Cyclo(c)), 20).regular() == !odd);
    }
  }

  TEST_CASE("probe verdicts are monotone in the bound") {
    const auto d = CyclicDatum::constant(2, Cyclo(Rational(7, 2)));
    CHECK(regularity_probe_rank1(d, 5).regular());
    CHECK_FALSE(regularity_probe_rank1(d, 7).regular());
    CHECK_FALSE(regularity_probe_rank1(d, 12).regular());
  }

  TEST_CASE("probe matches the Dunkl eigenvalues on Z/3") {
    // On Verma(tau_q), tau_q(s_i) = l^{iq}: y x^j = kappa_q(j) x^{j-1} with
    // kappa_q(j) = j - 2 sum_i c_i l^{iq} (1 - l^{ij}) / (1 - l^i).
    const Cyclo l = Cyclo::root(3, 1);
    for (const auto& [c1, c2] : {std::pair{Rational(1, 4), Rational(1, 4)}, std::pair{Rational(1, 7), Rational(1, 11)},
                                 std::pair{Rational(1, 2), Rational(0)}, std::pair{Rational(-5, 3), Rational(2, 3)}}) {
      const auto d = CyclicDatum::make(3, {Cyclo(c1), Cyclo(c2)});
      int first = 0;
      for (int j = 1; j <= 12 && !first; ++j)
        for (int q = 0; q < 3; ++q) {
          Cyclo kappa(j);
          for (int i = 1; i <= 2; ++i) {
            const Cyclo ci(i == 1 ? c1 : c2);
            kappa -= Cyclo(2) * ci * l.pow(i * q) * (Cyclo(1) - l.pow(i * j)) / (Cyclo(1) - l.pow(i));
          }
          if (kappa.is_zero() && !first) first = j;
        }
      const auto v = regularity_probe_rank1(d, 12);
      CAPTURE(c1.get_str());
      CHECK(v.regular() == (first == 0));
      if (first) CHECK(v.singular_witness->degree == first);
    }
  }

  TEST_CASE("establish regularity picks a method") {
    auto ctx = [](const char* n, const Rational& c) {
      return AlgebraContext::make(ReflectionGroup::close(builtin_group(n)), Cyclo(c));
    };
    CHECK(establish_regularity(*ctx("s3-reflection", Rational(1, 5))).method == "degrees");
    CHECK_FALSE(establish_regularity(*ctx("s3-reflection", Rational(1, 2))).regular());
    CHECK(establish_regularity(*ctx("cyclic:3", Rational(1, 5))).method == "probe");
    CHECK(establish_regularity(*ctx("minus-id:2", Rational(1, 2))).method == "trivial");
    CHECK(establish_regularity(*ctx("cyclic:2", Rational(0))).status == Regularity::regular);
    const auto ext = AlgebraContext::make(ReflectionGroup::close(builtin_group("cyclic:2")).extended_trivially(1),
                                          Cyclo(Rational(1, 2)));
    const auto v = establish_regularity(*ext);
    CHECK(v.status == Regularity::not_regular);
    CHECK(v.method.rfind("restriction", 0) == 0);
  }
}
