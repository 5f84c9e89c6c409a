#include <doctest.h>

#include <set>

#include "cherednik/errors.hpp"
#include "cherednik/groups.hpp"

using namespace cherednik;

namespace {
ReflectionGroup named(const std::string& n) { return ReflectionGroup::close(builtin_group(n)); }
}  // namespace

TEST_SUITE("groups") {
  TEST_CASE("orders, reflections and characters of the built-in families") {
    struct Row {
      const char* name;
      std::size_t order, reflections, characters;
    };
    for (const Row& r : {Row{"cyclic:2", 2, 1, 2}, Row{"cyclic:3", 3, 2, 3}, Row{"cyclic:4", 4, 3, 4},
                         Row{"minus-id:2", 2, 0, 2}, Row{"s3-reflection", 6, 3, 2}, Row{"trivial:2", 1, 0, 1}}) {
      CAPTURE(r.name);
      const auto g = named(r.name);
      CHECK(g.order() == r.order);
      CHECK(find_reflections(g).size() == r.reflections);
      CHECK(linear_characters(g).size() == r.characters);
    }
  }

  TEST_CASE("group tables") {
    for (const char* n : {"cyclic:4", "s3-reflection", "minus-id:3"}) {
      const auto g = named(n);
      for (std::size_t a = 0; a < g.order(); ++a) {
        CHECK(g.multiply(a, g.inverse(a)) == 0);
        CHECK((g.element(a) * g.element(g.inverse(a))).is_identity());
        // contragredient: <g.x, g.y> = <x, y>
        CHECK((g.dual_element(a).transpose() * g.element(a)).is_identity());
        for (std::size_t b = 0; b < g.order(); ++b)
          CHECK(g.element(g.multiply(a, b)) == g.element(a) * g.element(b));
      }
    }
    CHECK(named("cyclic:6").element_order(1) == 6);
  }

  TEST_CASE("reflection data are normalized") {
    for (const char* n : {"cyclic:3", "s3-reflection"}) {
      const auto g = named(n);
      for (const auto& r : find_reflections(g)) {
        Cyclo pairing(0);
        for (std::size_t i = 0; i < r.alpha.size(); ++i) pairing += r.alpha[i] * r.alpha_check[i];
        CHECK(pairing == Cyclo(2));
        std::size_t lead = 0;
        while (r.alpha[lead].is_zero()) ++lead;
        CHECK(r.alpha[lead] == Cyclo(1));
      }
    }
    // S_3: all reflections conjugate, eigenvalue -1
    const auto s3 = find_reflections(named("s3-reflection"));
    std::set<int> classes;
    for (const auto& r : s3) {
      classes.insert(r.class_id);
      CHECK(r.lambda == Cyclo(-1));
    }
    CHECK(classes.size() == 1);
    // Z/3: s and s^2 are not conjugate
    const auto z3 = find_reflections(named("cyclic:3"));
    CHECK(z3.at(0).class_id != z3.at(1).class_id);
  }

  TEST_CASE("parabolic classes") {
    const auto s3 = parabolic_classes(named("s3-reflection"));
    REQUIRE(s3.size() == 3);
    CHECK(s3[0].subgroup.size() == 1);
    CHECK(s3[0].fixed_space_dim == 2);
    CHECK(s3[1].subgroup.size() == 2);
    CHECK(s3[1].class_size == 3);
    CHECK(s3[1].fixed_space_dim == 1);
    CHECK(s3[2].subgroup.size() == 6);
    CHECK(s3[2].leaf_dim == 0);
    const auto m = parabolic_classes(named("minus-id:2"));
    REQUIRE(m.size() == 2);
    CHECK(m[1].fixed_space_dim == 0);
  }

  TEST_CASE("characters are homomorphisms") {
    for (const char* n : {"cyclic:4", "s3-reflection", "minus-id:2"}) {
      const auto g = named(n);
      for (const auto& chi : linear_characters(g))
        for (std::size_t a = 0; a < g.order(); ++a)
          for (std::size_t b = 0; b < g.order(); ++b) CHECK(chi[g.multiply(a, b)] == chi[a] * chi[b]);
    }
    CHECK_THROWS_AS(character_from_generators(named("cyclic:2"), {Cyclo(2)}), InvalidInput);
  }

  TEST_CASE("closure cap and bad input") {
    GroupSpec spec;
    spec.rank = 1;
    spec.generators.push_back(Matrix::from_rows({{Cyclo(2)}}));
    CHECK_THROWS_AS(ReflectionGroup::close(spec, 50), BudgetExceeded);
    CHECK_THROWS_AS(builtin_group("dihedral:5"), InvalidInput);
  }
}
