#include "meanlab/dsl.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <sstream>

#include "meanlab/errors.hpp"

namespace meanlab::dsl {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

NodePtr make(Node node) { return std::make_shared<const Node>(std::move(node)); }

enum class TokenKind { kNumber, kIdent, kSymbol, kEnd };

struct Token {
  TokenKind kind = TokenKind::kEnd;
  std::string_view text;
  std::size_t position = 0;
  double number = 0.0;
};

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) { advance(); }

  Expr parse_all() {
    NodePtr root = parse_expr();
    if (current_.kind != TokenKind::kEnd) {
      throw ParseError("unexpected '" + std::string(current_.text) + "'", current_.position);
    }
    return Expr(std::move(root));
  }

 private:
  void advance() {
    while (cursor_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[cursor_]))) ++cursor_;
    current_ = Token{};
    current_.position = cursor_;
    if (cursor_ >= text_.size()) {
      current_.kind = TokenKind::kEnd;
      return;
    }
    const char c = text_[cursor_];
    const bool starts_number =
        std::isdigit(static_cast<unsigned char>(c)) ||
        (c == '.' && cursor_ + 1 < text_.size() && std::isdigit(static_cast<unsigned char>(text_[cursor_ + 1])));
    if (starts_number) {
      const char* first = text_.data() + cursor_;
      const char* last = text_.data() + text_.size();
      double value = 0.0;
      auto [ptr, ec] = std::from_chars(first, last, value, std::chars_format::general);
      if (ec != std::errc()) throw ParseError("malformed number", cursor_);
      const auto length = static_cast<std::size_t>(ptr - first);
      current_.kind = TokenKind::kNumber;
      current_.number = value;
      current_.text = text_.substr(cursor_, length);
      cursor_ += length;
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t end = cursor_;
      while (end < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[end])) || text_[end] == '_')) {
        ++end;
      }
      current_.kind = TokenKind::kIdent;
      current_.text = text_.substr(cursor_, end - cursor_);
      cursor_ = end;
      return;
    }
    current_.kind = TokenKind::kSymbol;
    current_.text = text_.substr(cursor_, 1);
    ++cursor_;
  }

  bool at_symbol(char c) const {
    return current_.kind == TokenKind::kSymbol && current_.text[0] == c;
  }

  [[noreturn]] void unexpected(const char* expected) const {
    if (current_.kind == TokenKind::kEnd) {
      throw ParseError(std::string("unexpected end of input, expected ") + expected, current_.position);
    }
    throw ParseError("unexpected '" + std::string(current_.text) + "', expected " + expected,
                     current_.position);
  }

  NodePtr parse_expr() {
    NodePtr left = parse_term();
    while (at_symbol('+') || at_symbol('-')) {
      const BinaryOp op = at_symbol('+') ? BinaryOp::kAdd : BinaryOp::kSub;
      advance();
      left = make({Binary{op, left, parse_term()}});
    }
    return left;
  }

  NodePtr parse_term() {
    NodePtr left = parse_factor();
    while (at_symbol('*') || at_symbol('/')) {
      const BinaryOp op = at_symbol('*') ? BinaryOp::kMul : BinaryOp::kDiv;
      advance();
      left = make({Binary{op, left, parse_factor()}});
    }
    return left;
  }

  NodePtr parse_factor() {
    if (at_symbol('-')) {
      advance();
      return make({Unary{UnaryOp::kNeg, parse_factor()}});
    }
    return parse_power();
  }

  NodePtr parse_power() {
    NodePtr base = parse_atom();
    if (at_symbol('^')) {
      advance();
      return make({Binary{BinaryOp::kPow, base, parse_factor()}});
    }
    return base;
  }

  NodePtr parse_atom() {
    switch (current_.kind) {
      case TokenKind::kNumber: {
        const double value = current_.number;
        advance();
        return make({Constant{value}});
      }
      case TokenKind::kIdent: {
        const Token ident = current_;
        if (ident.text == "x") {
          advance();
          return make({Variable{}});
        }
        UnaryOp op;
        if (ident.text == "exp") {
          op = UnaryOp::kExp;
        } else if (ident.text == "log") {
          op = UnaryOp::kLog;
        } else if (ident.text == "sqrt") {
          op = UnaryOp::kSqrt;
        } else {
          throw ParseError("unknown identifier '" + std::string(ident.text) + "'", ident.position);
        }
        advance();
        if (!at_symbol('(')) unexpected("'(' after function name");
        advance();
        NodePtr arg = parse_expr();
        if (!at_symbol(')')) unexpected("')'");
        advance();
        return make({Unary{op, arg}});
      }
      case TokenKind::kSymbol:
        if (at_symbol('(')) {
          advance();
          NodePtr inner = parse_expr();
          if (!at_symbol(')')) unexpected("')'");
          advance();
          return inner;
        }
        unexpected("a number, 'x', a function or '('");
      case TokenKind::kEnd:
        break;
    }
    unexpected("a number, 'x', a function or '('");
  }

  std::string_view text_;
  std::size_t cursor_ = 0;
  Token current_;
};

double checked(double v, const char* what) {
  if (!std::isfinite(v)) throw EvalError(std::string("non-finite result in ") + what);
  return v;
}

double eval_node(const Node& node, double x) {
  return std::visit(
      Overloaded{
          [](const Constant& c) { return c.value; },
          [x](const Variable&) { return x; },
          [x](const Unary& u) {
            const double a = eval_node(*u.child, x);
            switch (u.op) {
              case UnaryOp::kNeg:
                return -a;
              case UnaryOp::kExp:
                return checked(std::exp(a), "exp");
              case UnaryOp::kLog:
                if (!(a > 0.0)) throw EvalError("log of a non-positive value");
                return checked(std::log(a), "log");
              case UnaryOp::kSqrt:
                if (a < 0.0) throw EvalError("sqrt of a negative value");
                return std::sqrt(a);
            }
            throw EvalError("unknown unary operator");
          },
          [x](const Binary& b) {
            const double l = eval_node(*b.left, x);
            const double r = eval_node(*b.right, x);
            switch (b.op) {
              case BinaryOp::kAdd:
                return checked(l + r, "addition");
              case BinaryOp::kSub:
                return checked(l - r, "subtraction");
              case BinaryOp::kMul:
                return checked(l * r, "multiplication");
              case BinaryOp::kDiv:
                if (r == 0.0) throw EvalError("division by zero");
                return checked(l / r, "division");
              case BinaryOp::kPow:
                // Constant exponents go through pow (integer powers of negative
                // bases are fine); variable exponents need a positive base.
                if (Expr::is_constant(*b.right)) return checked(std::pow(l, r), "power");
                if (!(l > 0.0)) throw EvalError("variable exponent requires a positive base");
                return checked(std::exp(r * std::log(l)), "power");
            }
            throw EvalError("unknown binary operator");
          },
      },
      node.value);
}

std::string format_constant(double v) {
  char buffer[64];
  auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof buffer, v);
  return std::string(buffer, ptr);
}

void print_node(const Node& node, std::ostringstream& out) {
  std::visit(Overloaded{
                 [&out](const Constant& c) {
                   if (c.value < 0.0) {
                     out << "(-" << format_constant(-c.value) << ")";
                   } else {
                     out << format_constant(c.value);
                   }
                 },
                 [&out](const Variable&) { out << 'x'; },
                 [&out](const Unary& u) {
                   switch (u.op) {
                     case UnaryOp::kNeg:
                       out << "(-";
                       print_node(*u.child, out);
                       out << ')';
                       return;
                     case UnaryOp::kExp:
                       out << "exp(";
                       break;
                     case UnaryOp::kLog:
                       out << "log(";
                       break;
                     case UnaryOp::kSqrt:
                       out << "sqrt(";
                       break;
                   }
                   print_node(*u.child, out);
                   out << ')';
                 },
                 [&out](const Binary& b) {
                   static constexpr char kSymbols[] = {'+', '-', '*', '/', '^'};
                   out << '(';
                   print_node(*b.left, out);
                   out << ' ' << kSymbols[static_cast<int>(b.op)] << ' ';
                   print_node(*b.right, out);
                   out << ')';
                 },
             },
             node.value);
}

}  // namespace

Expr::Expr(NodePtr root) : root_(std::move(root)) {
  if (!root_) throw Error("expression root must not be null");
}

bool Expr::is_constant(const Node& node) {
  return std::visit(Overloaded{
                        [](const Constant&) { return true; },
                        [](const Variable&) { return false; },
                        [](const Unary& u) { return is_constant(*u.child); },
                        [](const Binary& b) { return is_constant(*b.left) && is_constant(*b.right); },
                    },
                    node.value);
}

Expr parse(std::string_view text) { return Parser(text).parse_all(); }

double eval_expr(const Expr& e, double x) { return eval_node(e.root(), x); }

std::string print(const Expr& e) {
  std::ostringstream out;
  print_node(e.root(), out);
  return out.str();
}

Generator to_generator(const Expr& e, const Interval& domain, std::string label) {
  if (label.empty()) label = print(e);
  Generator g(domain, [e](double x) { return eval_expr(e, x); }, std::move(label));
  const MonotonicityReport report = check_monotone(g, kMonotoneGrid);
  if (!report.passed) {
    throw MonotonicityError(report.message, report.witness_x.value_or(NAN), report.witness_y.value_or(NAN),
                            report.witness_gx.value_or(NAN), report.witness_gy.value_or(NAN));
  }
  return g;
}

Generator parse_generator(std::string_view text, const Interval& domain) {
  return to_generator(parse(text), domain, std::string(text));
}

}  // namespace meanlab::dsl
