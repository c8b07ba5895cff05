#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "space.hpp"

namespace fgfp {

/// Node of an arithmetic expression over two argument vectors.
///
/// `First` / `Second` reference coordinate `index` (0-based) of the first
/// (a1..am) or second (b1..bn) argument.
struct ExprNode {
  enum class Kind { Literal, First, Second, Neg, Add, Sub, Mul, Div, Abs, Min, Max };

  Kind kind = Kind::Literal;
  double value = 0.0;
  std::size_t index = 0;
  std::vector<ExprNode> args;

  friend bool operator==(const ExprNode&, const ExprNode&) = default;
};

double evaluate(const ExprNode& node, std::span<const double> a, std::span<const double> b);
std::string to_string(const ExprNode& node);

/// A vector-valued map R^m × R^n -> R^k given by `k` expressions.
///
/// Grammar (one expression per output coordinate, separated by ';'):
///
///   expr    := term (('+' | '-') term)*
///   term    := unary (('*' | '/') unary)*
///   unary   := '-' unary | primary
///   primary := number | 'a'<i> | 'b'<j> | func '(' expr (',' expr)* ')' | '(' expr ')'
///   func    := 'abs' (one argument) | 'min' | 'max' (two or more)
class MapSpec {
 public:
  static MapSpec parse(std::string_view text, std::size_t first_arg_dim, std::size_t second_arg_dim,
                       std::size_t out_dim);

  std::size_t out_dim() const noexcept { return exprs_.size(); }
  std::size_t first_arg_dim() const noexcept { return first_dim_; }
  std::size_t second_arg_dim() const noexcept { return second_dim_; }
  const std::vector<ExprNode>& exprs() const noexcept { return exprs_; }
  const std::string& source() const noexcept { return source_; }

  /// Throws Error(Eval) on division by zero or a non-finite result.
  Point eval(const Point& a, const Point& b) const;

  /// Canonical fully parenthesised text; parses back to an identical AST.
  std::string to_string() const;

  /// Structural equality of the expression trees.
  bool same_ast(const MapSpec& other) const { return exprs_ == other.exprs_; }

 private:
  MapSpec() = default;

  std::size_t first_dim_ = 0;
  std::size_t second_dim_ = 0;
  std::vector<ExprNode> exprs_;
  std::string source_;
};

/// (F^n(x,y), G^n(y,x)) by forward iteration of the coupled recursion.
ProductPoint iterate_pair(const MapSpec& F, const MapSpec& G, const Point& x, const Point& y,
                          std::size_t n);

}  // namespace fgfp
