#pragma once

// Shared expression syntax: tokenizer, AST and the scalar / Laurent-polynomial
// front ends. Algebra elements reuse the AST (see pbw.hpp).
//
// Grammar (precedence ^ > unary minus > * / > + -):
//   expr   := ['+'|'-'] term (('+'|'-') term)*
//   term   := unary (('*'|'/') unary)*
//   unary  := '-' unary | power
//   power  := atom ['^' ['-'] integer]
//   atom   := integer | identifier | '(' expr ')'

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "cherednik/scalars.hpp"

namespace cherednik::syntax {

struct Node {
  enum class Kind { number, identifier, add, sub, mul, div, neg, pow };
  Kind kind = Kind::number;
  Integer number;
  std::string name;
  long exponent = 0;
  int line = 1;
  int column = 1;
  std::vector<Node> children;
};

// Throws ParseError with 1-based line/column.
Node parse(const std::string& source);

// Scalar literal: rationals and roots `z{N}` combined with + - * / ^.
// The result lives in Q(zeta_M) with M the lcm of the orders that appear
// (each root is embedded explicitly), or in `order` when given.
Cyclo parse_scalar(const std::string& source, int order = 0);
Cyclo evaluate_scalar(const Node& node, int order = 0);

// Laurent polynomial in x with exact coefficients; exponent -> coefficient.
using LaurentPoly = std::map<long, Cyclo>;
LaurentPoly parse_laurent(const std::string& source, int order = 0, const std::string& variable = "x");
std::string laurent_to_string(const LaurentPoly& p, const std::string& variable = "x");

// Lcm of every root order z{N} mentioned in the tree (1 if none).
int scalar_order(const Node& node);

}  // namespace cherednik::syntax
