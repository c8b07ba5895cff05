#include "expr.hpp"

#include <algorithm>
#include <charconv>
#include <cctype>
#include <cmath>
#include <cstdio>

#include "error.hpp"

namespace fgfp {

namespace {

class Parser {
 public:
  Parser(std::string_view text, std::size_t first_dim, std::size_t second_dim)
      : text_(text), first_dim_(first_dim), second_dim_(second_dim) {}

  std::vector<ExprNode> parse_list() {
    std::vector<ExprNode> out;
    skip_ws();
    if (at_end()) fail("empty map text");
    for (;;) {
      out.push_back(parse_expr());
      skip_ws();
      if (at_end()) break;
      if (peek() == ';') {
        ++pos_;
        continue;
      }
      fail(std::string("unexpected '") + peek() + "'");
    }
    return out;
  }

  std::size_t column() const { return pos_ + 1; }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(pos_ + 1, msg); }
  [[noreturn]] void fail_at(std::size_t pos, const std::string& msg) const {
    throw ParseError(pos + 1, msg);
  }

  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }
  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }
  bool accept(char c) {
    skip_ws();
    if (!at_end() && peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c)) {
      if (at_end()) fail(std::string("expected '") + c + "' before end of input");
      fail(std::string("expected '") + c + "'");
    }
  }

  ExprNode parse_expr() {
    ExprNode lhs = parse_term();
    for (;;) {
      skip_ws();
      if (at_end()) return lhs;
      const char c = peek();
      if (c != '+' && c != '-') return lhs;
      ++pos_;
      ExprNode rhs = parse_term();
      lhs = binary(c == '+' ? ExprNode::Kind::Add : ExprNode::Kind::Sub, std::move(lhs),
                   std::move(rhs));
    }
  }

  ExprNode parse_term() {
    ExprNode lhs = parse_unary();
    for (;;) {
      skip_ws();
      if (at_end()) return lhs;
      const char c = peek();
      if (c != '*' && c != '/') return lhs;
      ++pos_;
      skip_ws();
      const std::size_t rhs_pos = pos_;
      ExprNode rhs = parse_unary();
      if (c == '/' && rhs.kind == ExprNode::Kind::Literal && rhs.value == 0.0) {
        fail_at(rhs_pos, "division by literal zero");
      }
      lhs = binary(c == '*' ? ExprNode::Kind::Mul : ExprNode::Kind::Div, std::move(lhs),
                   std::move(rhs));
    }
  }

  ExprNode parse_unary() {
    skip_ws();
    if (!at_end() && peek() == '-') {
      ++pos_;
      ExprNode node;
      node.kind = ExprNode::Kind::Neg;
      node.args.push_back(parse_unary());
      return node;
    }
    return parse_primary();
  }

  ExprNode parse_primary() {
    skip_ws();
    if (at_end()) fail("expected operand before end of input");
    const char c = peek();
    if (c == '(') {
      ++pos_;
      ExprNode inner = parse_expr();
      expect(')');
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c))) return parse_identifier();
    fail(std::string("expected operand, found '") + c + "'");
  }

  ExprNode parse_number() {
    const std::size_t start = pos_;
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(text_.data() + pos_, text_.data() + text_.size(), value);
    if (ec != std::errc() || ptr == text_.data() + pos_) fail("malformed number");
    pos_ = static_cast<std::size_t>(ptr - text_.data());
    if (!std::isfinite(value)) fail_at(start, "number out of range");
    ExprNode node;
    node.kind = ExprNode::Kind::Literal;
    node.value = value;
    return node;
  }

  ExprNode parse_identifier() {
    const std::size_t start = pos_;
    while (!at_end() && std::isalnum(static_cast<unsigned char>(peek()))) ++pos_;
    const std::string_view name = text_.substr(start, pos_ - start);

    if (name == "abs" || name == "min" || name == "max") {
      expect('(');
      std::vector<ExprNode> args;
      args.push_back(parse_expr());
      while (accept(',')) args.push_back(parse_expr());
      expect(')');
      ExprNode node;
      if (name == "abs") {
        if (args.size() != 1) fail_at(start, "abs takes exactly one argument");
        node.kind = ExprNode::Kind::Abs;
      } else {
        if (args.size() < 2) fail_at(start, std::string(name) + " takes at least two arguments");
        node.kind = name == "min" ? ExprNode::Kind::Min : ExprNode::Kind::Max;
      }
      node.args = std::move(args);
      return node;
    }

    if (name.size() >= 2 && (name[0] == 'a' || name[0] == 'b') &&
        std::all_of(name.begin() + 1, name.end(),
                    [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); }) &&
        name[1] != '0') {
      std::size_t idx = 0;
      std::from_chars(name.data() + 1, name.data() + name.size(), idx);
      const bool first = name[0] == 'a';
      const std::size_t limit = first ? first_dim_ : second_dim_;
      if (idx < 1 || idx > limit) {
        fail_at(start, "unknown variable '" + std::string(name) + "' (argument has dimension " +
                           std::to_string(limit) + ")");
      }
      ExprNode node;
      node.kind = first ? ExprNode::Kind::First : ExprNode::Kind::Second;
      node.index = idx - 1;
      return node;
    }
    fail_at(start, "unknown variable '" + std::string(name) + "'");
  }

  static ExprNode binary(ExprNode::Kind kind, ExprNode lhs, ExprNode rhs) {
    ExprNode node;
    node.kind = kind;
    node.args.reserve(2);
    node.args.push_back(std::move(lhs));
    node.args.push_back(std::move(rhs));
    return node;
  }

  std::string_view text_;
  std::size_t first_dim_;
  std::size_t second_dim_;
  std::size_t pos_ = 0;
};

void print(const ExprNode& n, std::string& out) {
  using K = ExprNode::Kind;
  switch (n.kind) {
    case K::Literal: {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.17g", n.value);
      out += buf;
      return;
    }
    case K::First:
      out += "a" + std::to_string(n.index + 1);
      return;
    case K::Second:
      out += "b" + std::to_string(n.index + 1);
      return;
    case K::Neg:
      out += "(-";
      print(n.args[0], out);
      out += ")";
      return;
    case K::Add:
    case K::Sub:
    case K::Mul:
    case K::Div: {
      const char* op = n.kind == K::Add ? " + " : n.kind == K::Sub ? " - " : n.kind == K::Mul ? " * " : " / ";
      out += "(";
      print(n.args[0], out);
      out += op;
      print(n.args[1], out);
      out += ")";
      return;
    }
    case K::Abs:
    case K::Min:
    case K::Max:
      out += n.kind == K::Abs ? "abs(" : n.kind == K::Min ? "min(" : "max(";
      for (std::size_t i = 0; i < n.args.size(); ++i) {
        if (i) out += ", ";
        print(n.args[i], out);
      }
      out += ")";
      return;
  }
}

}  // namespace

double evaluate(const ExprNode& n, std::span<const double> a, std::span<const double> b) {
  using K = ExprNode::Kind;
  switch (n.kind) {
    case K::Literal: return n.value;
    case K::First: return a[n.index];
    case K::Second: return b[n.index];
    case K::Neg: return -evaluate(n.args[0], a, b);
    case K::Add: return evaluate(n.args[0], a, b) + evaluate(n.args[1], a, b);
    case K::Sub: return evaluate(n.args[0], a, b) - evaluate(n.args[1], a, b);
    case K::Mul: return evaluate(n.args[0], a, b) * evaluate(n.args[1], a, b);
    case K::Div: {
      const double num = evaluate(n.args[0], a, b);
      const double den = evaluate(n.args[1], a, b);
      if (den == 0.0) throw Error(ErrorKind::Eval, "division by zero");
      return num / den;
    }
    case K::Abs: return std::fabs(evaluate(n.args[0], a, b));
    case K::Min:
    case K::Max: {
      double acc = evaluate(n.args[0], a, b);
      for (std::size_t i = 1; i < n.args.size(); ++i) {
        const double v = evaluate(n.args[i], a, b);
        acc = n.kind == K::Min ? std::min(acc, v) : std::max(acc, v);
      }
      return acc;
    }
  }
  return 0.0;
}

std::string to_string(const ExprNode& node) {
  std::string out;
  print(node, out);
  return out;
}

MapSpec MapSpec::parse(std::string_view text, std::size_t first_arg_dim,
                       std::size_t second_arg_dim, std::size_t out_dim) {
  if (first_arg_dim == 0 || second_arg_dim == 0 || out_dim == 0) {
    throw Error(ErrorKind::Dimension, "map dimensions must be positive");
  }
  Parser parser(text, first_arg_dim, second_arg_dim);
  MapSpec map;
  map.exprs_ = parser.parse_list();
  if (map.exprs_.size() != out_dim) {
    throw ParseError(text.size() + 1, "expected " + std::to_string(out_dim) +
                                          " expression(s), found " +
                                          std::to_string(map.exprs_.size()));
  }
  map.first_dim_ = first_arg_dim;
  map.second_dim_ = second_arg_dim;
  map.source_ = std::string(text);
  return map;
}

Point MapSpec::eval(const Point& a, const Point& b) const {
  if (a.dim() != first_dim_ || b.dim() != second_dim_) {
    throw Error(ErrorKind::Dimension, "map arguments have dimensions (" + std::to_string(a.dim()) +
                                          ", " + std::to_string(b.dim()) + "), expected (" +
                                          std::to_string(first_dim_) + ", " +
                                          std::to_string(second_dim_) + ")");
  }
  std::vector<double> out(exprs_.size());
  for (std::size_t i = 0; i < exprs_.size(); ++i) {
    out[i] = evaluate(exprs_[i], a.coords(), b.coords());
    if (!std::isfinite(out[i])) {
      throw Error(ErrorKind::Eval, "non-finite result in output coordinate " + std::to_string(i + 1));
    }
  }
  return Point(std::move(out));
}

std::string MapSpec::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < exprs_.size(); ++i) {
    if (i) out += "; ";
    print(exprs_[i], out);
  }
  return out;
}

ProductPoint iterate_pair(const MapSpec& F, const MapSpec& G, const Point& x, const Point& y,
                          std::size_t n) {
  ProductPoint cur{x, y};
  for (std::size_t i = 0; i < n; ++i) {
    Point nx = F.eval(cur.x, cur.y);
    Point ny = G.eval(cur.y, cur.x);
    cur.x = std::move(nx);
    cur.y = std::move(ny);
  }
  return cur;
}

}  // namespace fgfp
