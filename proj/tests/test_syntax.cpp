#include <doctest.h>

#include "cherednik/errors.hpp"
#include "cherednik/syntax.hpp"

using namespace cherednik;

TEST_SUITE("syntax") {
  TEST_CASE("Laurent polynomials") {
    const auto p = syntax::parse_laurent("2*x^-1 + x");
    REQUIRE(p.size() == 2);
    CHECK(p.at(-1) == Cyclo(2));
    CHECK(p.at(1) == Cyclo(1));
    CHECK(syntax::parse_laurent(syntax::laurent_to_string(p)) == p);
    CHECK(syntax::parse_laurent("0").empty());
    CHECK(syntax::parse_laurent("x^-3 - x^-3").empty());
  }

  TEST_CASE("parse errors carry line and column") {
    try {
      syntax::parse_scalar("1/2 +");
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(e.line() == 1);
      CHECK(e.column() >= 5);
    }
    CHECK_THROWS_AS(syntax::parse_scalar("1/0"), InvalidInput);
    CHECK_THROWS_AS(syntax::parse_laurent("x^y"), InvalidInput);
  }

  TEST_CASE("root orders") {
    CHECK(syntax::scalar_order(syntax::parse("z3 + z4")) == 12);
    CHECK(syntax::parse_scalar("z3 + z4").order() == 12);
  }
}
