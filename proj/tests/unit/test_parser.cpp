#include <gtest/gtest.h>

#include <random>

#include "mepprove/error.hpp"
#include "mepprove/lowering.hpp"
#include "mepprove/parser.hpp"

using namespace mepprove;

namespace {

Rational R(const char* s) { return Rational::parse(s); }

const char* kG = "6*exp(-2*x) + 2 - exp(-2*x)*x^3 - exp(-x)*x^3 - 2*exp(-3*x) - 6*exp(-x) > 0";

std::size_t error_position(const char* text) {
  try {
    (void)parse_inequality(text);
  } catch (const ParseError& e) {
    return e.position();
  }
  ADD_FAILURE() << "no parse error for " << text;
  return 0;
}

Expr random_linear(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> pick(0, 3);
  std::uniform_int_distribution<long> c(1, 9);
  const Expr k = Expr::number(Rational(c(rng)));
  switch (pick(rng)) {
    case 0: return Expr::binary(Expr::Kind::kMul, k, Expr::var_x());
    case 1: return Expr::neg(Expr::var_x());
    case 2: return Expr::binary(Expr::Kind::kMul, Expr::var_a(), Expr::var_x());
    default: return Expr::binary(Expr::Kind::kSub, Expr::var_a(), Expr::binary(Expr::Kind::kDiv, Expr::var_x(), k));
  }
}

Expr random_expr(std::mt19937_64& rng, int depth) {
  std::uniform_int_distribution<int> leaf(0, 5);
  std::uniform_int_distribution<int> node(0, 8);
  std::uniform_int_distribution<long> n(0, 40);
  if (depth == 0) {
    switch (leaf(rng)) {
      case 0: return Expr::number(Rational(n(rng)));
      case 1: return Expr::number(Rational(n(rng)) / Rational(8));
      case 2: return Expr::var_x();
      case 3: return Expr::var_a();
      case 4: return Expr::e();
      default: return Expr::exp(random_linear(rng));
    }
  }
  const Expr l = random_expr(rng, depth - 1);
  switch (node(rng)) {
    case 0: return Expr::binary(Expr::Kind::kAdd, l, random_expr(rng, depth - 1));
    case 1: return Expr::binary(Expr::Kind::kSub, l, random_expr(rng, depth - 1));
    case 2: return Expr::binary(Expr::Kind::kMul, l, random_expr(rng, depth - 1));
    case 3: return Expr::binary(Expr::Kind::kDiv, l, random_expr(rng, depth - 1));
    case 4: return Expr::neg(l);
    case 5: return Expr::pow(l, std::uniform_int_distribution<long>(-3, 4)(rng));
    case 6: return Expr::sign(l);
    default: return l;
  }
}

}  // namespace

TEST(Parser, ExpressionForGParses) {
  const Inequality ineq = parse_inequality(kG);
  EXPECT_EQ(ineq.cmp, Comparator::kGreater);
  EXPECT_EQ(ineq.right, Expr::number(Rational(0)));
  EXPECT_TRUE(ineq.left.mentions_x());
  EXPECT_FALSE(ineq.left.mentions_a());
}

TEST(Parser, ComparatorsAndUnicode) {
  EXPECT_EQ(parse_inequality("x >= 1").cmp, Comparator::kGreaterEq);
  EXPECT_EQ(parse_inequality("x <= 1").cmp, Comparator::kLessEq);
  EXPECT_EQ(parse_inequality("x < 1").cmp, Comparator::kLess);
  EXPECT_EQ(parse_inequality("x \xE2\x89\xA5 1").cmp, Comparator::kGreaterEq);
  EXPECT_EQ(parse_inequality("x \xE2\x89\xA4 1").cmp, Comparator::kLessEq);
  EXPECT_EQ(parse_inequality("x \xE2\x88\x92 1 > 0"), parse_inequality("x - 1 > 0"));
  EXPECT_EQ(parse_inequality("x > x").str(), "x > x");
}

TEST(Parser, SugarAndDecimals) {
  EXPECT_EQ(parse_expression("e^(-2*x)"), parse_expression("exp(-2*x)"));
  EXPECT_EQ(parse_expression("e^a"), parse_expression("exp(a)"));
  EXPECT_EQ(parse_expression("e^2"), Expr::pow(Expr::e(), 2));
  EXPECT_EQ(parse_expression("0.5"), Expr::number(R("1/2")));
  EXPECT_EQ(parse_expression("x^-2"), Expr::pow(Expr::var_x(), -2));
}

TEST(Parser, ErrorsCarryPositions) {
  EXPECT_EQ(error_position("exp(x^2) > 0"), 0u);
  EXPECT_EQ(error_position("x + > 0"), 4u);
  EXPECT_EQ(error_position("x > 0 )"), 6u);
  EXPECT_EQ(error_position("x $ 1"), 2u);
  EXPECT_EQ(error_position("y > 0"), 0u);
  EXPECT_EQ(error_position("x"), 1u);
  EXPECT_EQ(error_position("x^1.5 > 0"), 2u);
  EXPECT_EQ(error_position("exp(e*x) > 0"), 0u);
  EXPECT_EQ(error_position("exp(x/x) > 0"), 0u);
}

TEST(Parser, RoundTripOnGeneratedExpressions) {
  std::mt19937_64 rng(101);
  for (int i = 0; i < 500; ++i) {
    const Expr e = random_expr(rng, 4);
    const std::string text = e.str();
    const Expr back = parse_expression(text);
    EXPECT_EQ(back, e) << text;
    EXPECT_EQ(back.str(), text);
  }
}

TEST(Parser, TotalOnRandomBytes) {
  std::mt19937_64 rng(202);
  const std::string alphabet = "0123456789.xaeexp()+-*/^<>= sign\xE2\x88\x92\x01";
  std::uniform_int_distribution<std::size_t> len(0, 14);
  std::uniform_int_distribution<std::size_t> ch(0, alphabet.size() - 1);
  std::uniform_int_distribution<int> byte(0, 255);
  std::size_t accepted = 0;
  for (int i = 0; i < 100000; ++i) {
    std::string s;
    const std::size_t n = len(rng);
    for (std::size_t k = 0; k < n; ++k) s += (i % 4 == 0) ? static_cast<char>(byte(rng)) : alphabet[ch(rng)];
    try {
      (void)parse_inequality(s);
      ++accepted;
    } catch (const ParseError& e) {
      EXPECT_LE(e.position(), s.size());
    }
  }
  EXPECT_GT(accepted, 0u);
}

TEST(Lowering, NegativeRatesAreNormalized) {
  const LoweredExpr l = to_exp_rational(parse_inequality("x*exp(x) - 1 > 0").oriented_difference());
  EXPECT_EQ(l.v, Rational(1));
  EXPECT_EQ(l.f.numerator(), (Mep{{Rational(1), 1, 0}, {Rational(-1), 0, 1}}));
  EXPECT_EQ(l.f.denominator(), Mep::monomial(Rational(1), 0, 1));
}

TEST(Lowering, ExpressionForGToMep) {
  const MepGoal g = to_mep_goal(parse_inequality(kG), Rational(0), Rational(1));
  EXPECT_EQ(g.f.size(), 6u);
  EXPECT_EQ(g.f.str(), "2 - 6 * exp(-x) - x^3 * exp(-x) + 6 * exp(-2*x) - x^3 * exp(-2*x) - 2 * exp(-3*x)");
  EXPECT_EQ(parse_mep("6*exp(-2*x) + 2 - exp(-2*x)*x^3 - exp(-x)*x^3 - 2*exp(-3*x) - 6*exp(-x)"), g.f);
}

TEST(Lowering, QuotientKeepsDenominator) {
  const LoweredExpr l = to_exp_rational(parse_expression("1/x^2 - exp(-x)/(1-exp(-x))^2 - 1/12"));
  const Mep one_minus_y{{Rational(1), 0, 0}, {Rational(-1), 0, 1}};
  const Mep den = l.f.denominator();
  // Denominator is a positive multiple of x^2 (1 - y)^2.
  const Mep expected = Mep{{Rational(1), 2, 0}} * one_minus_y * one_minus_y;
  ASSERT_FALSE(den.is_zero());
  const Rational ratio = den.terms().front().alpha / expected.terms().front().alpha;
  EXPECT_GT(ratio, Rational(0));
  EXPECT_EQ(den, expected.scale(ratio));
}

TEST(Lowering, DenominatorSignIsCertifiedBeforeClearing) {
  const MepGoal g = to_mep_goal(parse_inequality("1/(1 - exp(-x)) > 1"), Rational(0), Rational(1));
  ASSERT_TRUE(g.denominator_certificate.has_value());
  EXPECT_EQ(g.denominator_sign, 1);
  try {
    (void)to_mep_goal(parse_inequality("1/(x - 1/2) > 0"), Rational(0), Rational(1));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kIndeterminate);
  }
}

TEST(Lowering, RationalRatesRescale) {
  const LoweredExpr l = to_exp_rational(parse_expression("exp(-x/2) - exp(-x/3)"));
  EXPECT_EQ(l.v, Rational(6));
  EXPECT_EQ(l.f.numerator(), (Mep{{Rational(1), 0, 3}, {Rational(-1), 0, 2}}));
}

TEST(Lowering, RejectsNonMepPieces) {
  EXPECT_THROW(to_exp_rational(parse_expression("e*x")), Error);
  EXPECT_THROW(to_exp_rational(parse_expression("a*x")), Error);
  EXPECT_THROW(to_exp_rational(parse_expression("sign(x)")), Error);
  EXPECT_THROW(to_exp_rational(parse_expression("exp(1 - x)")), Error);
}

TEST(Lowering, ConstantExpressions) {
  const ConstExpr c = to_const_expr(parse_expression("(e^2 - 3*e + 1)/(e - 1)^2"));
  EXPECT_EQ(c.simplified().str(), "(e^2 - 3*e + 1)/(e^2 - 2*e + 1)");
  EXPECT_EQ(*to_const_expr(parse_expression("1/12")).exact_value(), R("1/12"));
  EXPECT_THROW(to_const_expr(parse_expression("x + 1")), Error);
}
