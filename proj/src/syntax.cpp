#include "cherednik/syntax.hpp"

#include <cctype>
#include <numeric>

#include "cherednik/errors.hpp"

namespace cherednik::syntax {

namespace {

struct Token {
  enum class Type { number, identifier, symbol, end };
  Type type = Type::end;
  std::string text;
  int line = 1;
  int column = 1;
};

std::vector<Token> tokenize(const std::string& src) {
  std::vector<Token> out;
  int line = 1, column = 1;
  int last_line = 1, last_column = 1;
  std::size_t i = 0;
  while (i < src.size()) {
    const char ch = src[i];
    if (ch == '\n') {
      ++line;
      column = 1;
      ++i;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(ch))) {
      ++column;
      ++i;
      continue;
    }
    Token tok;
    tok.line = line;
    tok.column = column;
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      tok.type = Token::Type::number;
      while (i < src.size() && std::isdigit(static_cast<unsigned char>(src[i]))) {
        tok.text += src[i++];
        ++column;
      }
    } else if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
      tok.type = Token::Type::identifier;
      while (i < src.size() && (std::isalnum(static_cast<unsigned char>(src[i])) || src[i] == '_')) {
        tok.text += src[i++];
        ++column;
      }
    } else if (std::string("+-*/^()").find(ch) != std::string::npos) {
      tok.type = Token::Type::symbol;
      tok.text = std::string(1, ch);
      ++i;
      ++column;
    } else {
      throw ParseError(line, column, std::string("unexpected character '") + ch + "'");
    }
    last_line = line;
    last_column = column - 1;
    out.push_back(std::move(tok));
  }
  Token end;
  end.type = Token::Type::end;
  // End-of-input errors point at the last character consumed.
  end.line = last_line;
  end.column = out.empty() ? 1 : last_column;
  out.push_back(end);
  return out;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  Node parse_all() {
    if (peek().type == Token::Type::end) fail(peek(), "empty expression");
    Node n = expr();
    if (peek().type != Token::Type::end) fail(peek(), "unexpected '" + peek().text + "'");
    return n;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& take() { return toks_[pos_++]; }
  bool at_symbol(const char* s) const { return peek().type == Token::Type::symbol && peek().text == s; }

  [[noreturn]] void fail(const Token& t, const std::string& what) {
    if (t.type == Token::Type::end && pos_ > 0) {
      const Token& prev = toks_[pos_ - 1];
      throw ParseError(t.line, t.column, "unexpected end of input after '" + prev.text + "'");
    }
    throw ParseError(t.line, t.column, what);
  }

  static Node binary(Node::Kind k, Node lhs, Node rhs, const Token& op) {
    Node n;
    n.kind = k;
    n.line = op.line;
    n.column = op.column;
    n.children.push_back(std::move(lhs));
    n.children.push_back(std::move(rhs));
    return n;
  }

  Node expr() {
    Node lhs;
    if (at_symbol("+")) {
      take();
      lhs = term();
    } else if (at_symbol("-")) {
      const Token& op = take();
      Node inner = term();
      lhs.kind = Node::Kind::neg;
      lhs.line = op.line;
      lhs.column = op.column;
      lhs.children.push_back(std::move(inner));
    } else {
      lhs = term();
    }
    while (at_symbol("+") || at_symbol("-")) {
      const Token& op = take();
      Node rhs = term();
      lhs = binary(op.text == "+" ? Node::Kind::add : Node::Kind::sub, std::move(lhs), std::move(rhs), op);
    }
    return lhs;
  }

  Node term() {
    Node lhs = unary();
    while (at_symbol("*") || at_symbol("/")) {
      const Token& op = take();
      Node rhs = unary();
      lhs = binary(op.text == "*" ? Node::Kind::mul : Node::Kind::div, std::move(lhs), std::move(rhs), op);
    }
    return lhs;
  }

  Node unary() {
    if (at_symbol("-")) {
      const Token& op = take();
      Node n;
      n.kind = Node::Kind::neg;
      n.line = op.line;
      n.column = op.column;
      n.children.push_back(unary());
      return n;
    }
    return power();
  }

  Node power() {
    Node base = atom();
    if (!at_symbol("^")) return base;
    const Token& op = take();
    bool negative = false;
    if (at_symbol("-")) {
      take();
      negative = true;
    }
    if (peek().type != Token::Type::number) fail(peek(), "expected integer exponent after '^'");
    const Token& num = take();
    if (num.text.size() > 9) fail(num, "exponent too large");
    Node n;
    n.kind = Node::Kind::pow;
    n.line = op.line;
    n.column = op.column;
    n.exponent = std::stol(num.text) * (negative ? -1 : 1);
    n.children.push_back(std::move(base));
    return n;
  }

  Node atom() {
    const Token& t = peek();
    if (t.type == Token::Type::number) {
      take();
      Node n;
      n.kind = Node::Kind::number;
      n.number = Integer(t.text);
      n.line = t.line;
      n.column = t.column;
      return n;
    }
    if (t.type == Token::Type::identifier) {
      take();
      Node n;
      n.kind = Node::Kind::identifier;
      n.name = t.text;
      n.line = t.line;
      n.column = t.column;
      return n;
    }
    if (at_symbol("(")) {
      take();
      if (peek().type == Token::Type::end) fail(peek(), "expected expression after '('");
      Node inner = expr();
      if (!at_symbol(")")) fail(peek(), "expected ')'");
      take();
      return inner;
    }
    fail(t, t.type == Token::Type::end ? "unexpected end of input" : "unexpected '" + t.text + "'");
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

// Returns N when `name` is z{N}, 0 otherwise.
int root_order(const std::string& name) {
  if (name.size() < 2 || name[0] != 'z') return 0;
  for (std::size_t i = 1; i < name.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(name[i]))) return 0;
  if (name.size() > 6) return -1;
  return std::stoi(name.substr(1));
}

}  // namespace

Node parse(const std::string& source) { return Parser(tokenize(source)).parse_all(); }

int scalar_order(const Node& node) {
  int order = 1;
  if (node.kind == Node::Kind::identifier) {
    const int n = root_order(node.name);
    if (n > 0) order = n;
  }
  for (const auto& c : node.children) order = static_cast<int>(std::lcm(order, scalar_order(c)));
  return order;
}

Cyclo evaluate_scalar(const Node& node, int order) {
  if (order <= 0) order = scalar_order(node);
  switch (node.kind) {
    case Node::Kind::number:
      return Cyclo(Rational(node.number), order);
    case Node::Kind::identifier: {
      const int n = root_order(node.name);
      if (n <= 0) throw ParseError(node.line, node.column, "unknown identifier '" + node.name + "' in scalar");
      if (order % n != 0) {
        throw ParseError(node.line, node.column,
                         "root " + node.name + " does not lie in Q(zeta_" + std::to_string(order) + ")");
      }
      return Cyclo::root(n, 1).embed(order);
    }
    case Node::Kind::add:
      return evaluate_scalar(node.children[0], order) + evaluate_scalar(node.children[1], order);
    case Node::Kind::sub:
      return evaluate_scalar(node.children[0], order) - evaluate_scalar(node.children[1], order);
    case Node::Kind::mul:
      return evaluate_scalar(node.children[0], order) * evaluate_scalar(node.children[1], order);
    case Node::Kind::div: {
      Cyclo den = evaluate_scalar(node.children[1], order);
      if (den.is_zero()) throw ParseError(node.line, node.column, "division by zero");
      return evaluate_scalar(node.children[0], order) / den;
    }
    case Node::Kind::neg:
      return -evaluate_scalar(node.children[0], order);
    case Node::Kind::pow: {
      Cyclo base = evaluate_scalar(node.children[0], order);
      if (node.exponent < 0 && base.is_zero()) throw ParseError(node.line, node.column, "division by zero");
      return base.pow(node.exponent);
    }
  }
  throw InternalInconsistency("unhandled syntax node");
}

Cyclo parse_scalar(const std::string& source, int order) {
  Node n = parse(source);
  if (order > 0) {
    const int needed = scalar_order(n);
    if (order % needed != 0) {
      throw InvalidInput("scalar '" + source + "' needs Q(zeta_" + std::to_string(needed) +
                         ") which is not contained in Q(zeta_" + std::to_string(order) + ")");
    }
  }
  return evaluate_scalar(n, order);
}

namespace {

LaurentPoly laurent_mul(const LaurentPoly& a, const LaurentPoly& b) {
  LaurentPoly out;
  for (const auto& [i, u] : a)
    for (const auto& [j, v] : b) {
      auto& slot = out[i + j];
      slot += u * v;
    }
  for (auto it = out.begin(); it != out.end();) it = it->second.is_zero() ? out.erase(it) : std::next(it);
  return out;
}

LaurentPoly laurent_add(LaurentPoly a, const LaurentPoly& b, bool subtract) {
  for (const auto& [e, c] : b) {
    auto& slot = a[e];
    if (subtract)
      slot -= c;
    else
      slot += c;
    if (slot.is_zero()) a.erase(e);
  }
  return a;
}

LaurentPoly evaluate_laurent(const Node& node, int order, const std::string& var) {
  switch (node.kind) {
    case Node::Kind::number: {
      if (node.number == 0) return {};
      return {{0, Cyclo(Rational(node.number), order)}};
    }
    case Node::Kind::identifier:
      if (node.name == var) return {{1, Cyclo(Rational(1), order)}};
      return {{0, evaluate_scalar(node, order)}};
    case Node::Kind::add:
    case Node::Kind::sub:
      return laurent_add(evaluate_laurent(node.children[0], order, var),
                         evaluate_laurent(node.children[1], order, var), node.kind == Node::Kind::sub);
    case Node::Kind::mul:
      return laurent_mul(evaluate_laurent(node.children[0], order, var),
                         evaluate_laurent(node.children[1], order, var));
    case Node::Kind::div: {
      LaurentPoly den = evaluate_laurent(node.children[1], order, var);
      if (den.size() != 1) throw ParseError(node.line, node.column, "can only divide by a monomial");
      LaurentPoly inv = {{-den.begin()->first, den.begin()->second.inverse()}};
      return laurent_mul(evaluate_laurent(node.children[0], order, var), inv);
    }
    case Node::Kind::neg: {
      LaurentPoly p = evaluate_laurent(node.children[0], order, var);
      for (auto& [e, c] : p) c = -c;
      return p;
    }
    case Node::Kind::pow: {
      LaurentPoly base = evaluate_laurent(node.children[0], order, var);
      long e = node.exponent;
      if (e < 0) {
        if (base.size() != 1) throw ParseError(node.line, node.column, "negative power of a non-monomial");
        base = {{-base.begin()->first, base.begin()->second.inverse()}};
        e = -e;
      }
      LaurentPoly out = {{0, Cyclo(Rational(1), order)}};
      for (long k = 0; k < e; ++k) out = laurent_mul(out, base);
      return out;
    }
  }
  throw InternalInconsistency("unhandled syntax node");
}

}  // namespace

LaurentPoly parse_laurent(const std::string& source, int order, const std::string& variable) {
  Node n = parse(source);
  const int needed = scalar_order(n);
  if (order <= 0) order = needed;
  if (order % needed != 0) {
    throw InvalidInput("'" + source + "' needs Q(zeta_" + std::to_string(needed) + ")");
  }
  return evaluate_laurent(n, order, variable);
}

std::string laurent_to_string(const LaurentPoly& p, const std::string& variable) {
  std::string out;
  for (auto it = p.rbegin(); it != p.rend(); ++it) {
    const auto& [e, c] = *it;
    if (c.is_zero()) continue;
    std::string coeff = c.to_string();
    const bool simple = c.is_rational();
    std::string mono = e == 0 ? "" : (e == 1 ? variable : variable + "^" + std::to_string(e));
    std::string term;
    bool negative = false;
    if (simple && c.rational_value() < 0) {
      negative = true;
      coeff = (-c).to_string();
    }
    if (mono.empty()) {
      term = simple ? coeff : "(" + coeff + ")";
    } else if (simple && coeff == "1") {
      term = mono;
    } else {
      term = (simple ? coeff : "(" + coeff + ")") + "*" + mono;
    }
    if (out.empty())
      out = negative ? "-" + term : term;
    else
      out += (negative ? " - " : " + ") + term;
  }
  return out.empty() ? "0" : out;
}

}  // namespace cherednik::syntax
