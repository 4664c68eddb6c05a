#include "meanlab/dsl.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <variant>

#include "meanlab/errors.hpp"

namespace meanlab::dsl {
namespace {

double at(const char* text, double x) { return eval_expr(parse(text), x); }

std::size_t error_position(std::string_view text) {
  try {
    parse(text);
  } catch (const ParseError& e) {
    return e.position();
  }
  ADD_FAILURE() << "no parse error for '" << text << "'";
  return 0;
}

TEST(DslParse, Variable) {
  const Expr e = parse("x");
  EXPECT_TRUE(std::holds_alternative<Variable>(e.root().value));
}

TEST(DslParse, Examples) {
  EXPECT_DOUBLE_EQ(at("x^3 + x", 2.0), 10.0);
  EXPECT_DOUBLE_EQ(at("2*x+1", 3.0), 7.0);
  EXPECT_NEAR(at("exp(log(x))", 5.0), 5.0, 1e-12);
}

TEST(DslParse, Precedence) {
  EXPECT_DOUBLE_EQ(at("2+3*4", 0.0), 14.0);
  EXPECT_DOUBLE_EQ(at("2*3^2", 0.0), 18.0);
  EXPECT_DOUBLE_EQ(at("-x^2", 3.0), -9.0);
  EXPECT_DOUBLE_EQ(at("2^3^2", 0.0), 512.0);
  EXPECT_DOUBLE_EQ(at("10-4-3", 0.0), 3.0);
  EXPECT_DOUBLE_EQ(at("24/4/3", 0.0), 2.0);
  EXPECT_DOUBLE_EQ(at("2^-1", 0.0), 0.5);
  EXPECT_DOUBLE_EQ(at("--x", 4.0), 4.0);
}

TEST(DslParse, NumbersAndWhitespace) {
  EXPECT_DOUBLE_EQ(at(" 1.5e1 *  x ", 2.0), 30.0);
  EXPECT_DOUBLE_EQ(at(".25", 0.0), 0.25);
  EXPECT_DOUBLE_EQ(at("sqrt( x )", 9.0), 3.0);
}

TEST(DslParse, ErrorPositions) {
  EXPECT_EQ(error_position("log("), 4u);
  EXPECT_EQ(error_position("sin(x)"), 0u);
  EXPECT_EQ(error_position("(x"), 2u);
  EXPECT_EQ(error_position("x)"), 1u);
  EXPECT_EQ(error_position("x + y"), 4u);
  EXPECT_EQ(error_position(""), 0u);
  EXPECT_EQ(error_position("exp x"), 4u);
  EXPECT_EQ(error_position("2 $ x"), 2u);
}

TEST(DslParse, ErrorPositionsAreMonotoneUnderTruncation) {
  for (std::string_view text : {"log(", "x + (2 * ", "exp(x)) + 1", "x ^ ^ 2", "sqrt(x + foo)", "1 + 2 3"}) {
    const std::size_t p = error_position(text);
    ASSERT_LE(p, text.size());
    try {
      parse(text.substr(0, p));
    } catch (const ParseError& e) {
      EXPECT_LE(e.position(), p) << text;
    }
  }
}

TEST(DslEval, Errors) {
  EXPECT_THROW(at("1/(x-1)", 1.0), EvalError);
  EXPECT_THROW(at("log(x)", 0.0), EvalError);
  EXPECT_THROW(at("log(x)", -1.0), EvalError);
  EXPECT_THROW(at("sqrt(x)", -1.0), EvalError);
  EXPECT_THROW(at("exp(x)", 1000.0), EvalError);
}

TEST(DslEval, Powers) {
  // Constant exponent: negative base allowed for integral powers.
  EXPECT_DOUBLE_EQ(at("x^3", -2.0), -8.0);
  EXPECT_DOUBLE_EQ(at("x^(1+1)", -3.0), 9.0);
  EXPECT_THROW(at("x^0.5", -4.0), EvalError);
  // Variable exponent goes through exp(b log a) and needs a positive base.
  EXPECT_NEAR(at("2^x", 3.0), 8.0, 1e-12);
  EXPECT_NEAR(at("x^x", 2.0), 4.0, 1e-12);
  EXPECT_THROW(at("x^x", -2.0), EvalError);
}

TEST(DslPrint, RoundTripEvaluatesIdentically) {
  for (const char* text : {"x", "x^3 + x", "-x^2", "2*x+1", "exp(log(x))", "1/(x+2) - 3*sqrt(x)", "2^-x",
                           "0.1 + x^2.5/7", "--x*1e-3", "log(1+x)*exp(-x)"}) {
    const Expr e = parse(text);
    const Expr again = parse(print(e));
    for (int k = 0; k < 64; ++k) {
      const double x = 0.05 + 4.0 * k / 63.0;
      const double a = eval_expr(e, x);
      const double b = eval_expr(again, x);
      EXPECT_LE(std::abs(a - b), 1e-15 * std::max(1.0, std::abs(a))) << text << " printed as " << print(e);
    }
  }
}

TEST(DslGenerator, BindsMonotoneBody) {
  const Generator g = to_generator(parse("x^3"), Interval::open(0.0, 10.0));
  EXPECT_DOUBLE_EQ(g.eval(2.0), 8.0);
  EXPECT_DOUBLE_EQ(parse_generator("log(x) + x", Interval::open(0.1, 10.0)).eval(1.0), 1.0);
}

TEST(DslGenerator, UnknownFunctionIsParseError) { EXPECT_THROW(parse("sin(x)"), ParseError); }

TEST(DslGenerator, DecreasingBodyCarriesWitness) {
  try {
    to_generator(parse("0 - x"), Interval::open(0.0, 10.0));
    FAIL() << "expected MonotonicityError";
  } catch (const MonotonicityError& e) {
    EXPECT_LT(e.x(), e.y());
    EXPECT_GE(e.gx(), e.gy());
    EXPECT_DOUBLE_EQ(e.gx(), -e.x());
  }
}

TEST(DslGenerator, PoleInsideDomainIsRejected) {
  EXPECT_THROW(to_generator(parse("log(x - 5)"), Interval::open(0.0, 10.0)), MonotonicityError);
}

}  // namespace
}  // namespace meanlab::dsl
