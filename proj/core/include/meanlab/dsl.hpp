#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <variant>

#include "meanlab/generator.hpp"
#include "meanlab/interval.hpp"

namespace meanlab::dsl {

// Grammar (one token of lookahead):
//
//   expr   := term (("+"|"-") term)* ;
//   term   := factor (("*"|"/") factor)* ;
//   factor := "-" factor | power ;
//   power  := atom ("^" factor)? ;
//   atom   := NUMBER | "x" | IDENT "(" expr ")" | "(" expr ")" ;
//   IDENT  := "exp" | "log" | "sqrt" ;

enum class UnaryOp { kNeg, kExp, kLog, kSqrt };
enum class BinaryOp { kAdd, kSub, kMul, kDiv, kPow };

struct Node;
using NodePtr = std::shared_ptr<const Node>;

struct Constant {
  double value;
};
struct Variable {};
struct Unary {
  UnaryOp op;
  NodePtr child;
};
struct Binary {
  BinaryOp op;
  NodePtr left;
  NodePtr right;
};

struct Node {
  std::variant<Constant, Variable, Unary, Binary> value;
};

/// Immutable expression tree in the single variable x.
class Expr {
 public:
  explicit Expr(NodePtr root);

  const Node& root() const noexcept { return *root_; }
  const NodePtr& root_ptr() const noexcept { return root_; }

  /// True when the subtree does not reference x.
  static bool is_constant(const Node& node);

 private:
  NodePtr root_;
};

/// Throws ParseError with a byte offset for unknown identifiers,
/// unbalanced parentheses and trailing input.
Expr parse(std::string_view text);

/// Throws EvalError on any non-finite intermediate (pole, log of a
/// non-positive number, complex power).
double eval_expr(const Expr& e, double x);

/// Canonical fully parenthesised form; parse(print(e)) evaluates like e.
std::string print(const Expr& e);

/// Default grid used by to_generator's monotonicity check.
inline constexpr int kMonotoneGrid = 256;

/// Binds `e` to `domain`. Throws MonotonicityError (with the witness pair)
/// unless the result passes check_monotone on kMonotoneGrid points.
Generator to_generator(const Expr& e, const Interval& domain, std::string label = {});

/// parse + to_generator, labelled with the source text.
Generator parse_generator(std::string_view text, const Interval& domain);

}  // namespace meanlab::dsl
