#include <gtest/gtest.h>

#include "mepprove/error.hpp"
#include "mepprove/grid.hpp"
#include "mepprove/lowering.hpp"
#include "mepprove/param_family.hpp"
#include "mepprove/parser.hpp"
#include "mepprove/stratify.hpp"
#include "oracles.hpp"

using namespace mepprove;

namespace {

Rational R(const char* s) { return Rational::parse(s); }

AffineFamily reciprocal_square_family() {
  return AffineFamily{to_exp_rational(parse_expression("1/x^2 - exp(-x)/(1-exp(-x))^2")).f, Rational(0), Rational(1),
                      to_const_expr(parse_expression("1/12")),
                      to_const_expr(parse_expression("(e^2 - 3*e + 1)/(e - 1)^2"))};
}

AffineFamily linear(const char* f, const char* at_a, const char* at_b) {
  return AffineFamily{to_exp_rational(parse_expression(f)).f, Rational(0), Rational(1),
                      to_const_expr(parse_expression(at_a)), to_const_expr(parse_expression(at_b))};
}

const char* kCascadeFamily = "exp(-a*x) + a*x*(1-x) - x^2*(exp(-a) - 1) - 1";
const char* kSignedUpper = "sign(a)*exp(a*x) <= sign(a)*(a*x*(1-x) + x^2*(exp(a)-1) + 1)";
const char* kSignedLower = "sign(a)*exp(a*x) >= sign(a)*(a*x*(1-x) + x^2*(exp(a)-1) + 1)";

}  // namespace

class ReciprocalSquareFamily : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    fam_ = new AffineFamily(reciprocal_square_family());
    report_ = new FamilyReport(analyze_affine_family(*fam_));
  }
  static void TearDownTestSuite() {
    delete report_;
    delete fam_;
  }
  static AffineFamily* fam_;
  static FamilyReport* report_;
};

AffineFamily* ReciprocalSquareFamily::fam_ = nullptr;
FamilyReport* ReciprocalSquareFamily::report_ = nullptr;

TEST_F(ReciprocalSquareFamily, DecreasingWithExpectedConstants) {
  const FamilyReport& r = *report_;
  EXPECT_EQ(r.monotone, Monotone::kDecreasing);
  EXPECT_EQ(r.numerator_sign, -1);
  EXPECT_TRUE(verify_certificate(r.derivative_certificate));
  EXPECT_EQ(r.derivative_certificate.input,
            "2 - 6 * exp(-x) - x^3 * exp(-x) + 6 * exp(-2*x) - x^3 * exp(-2*x) - 2 * exp(-3*x) > 0");
  EXPECT_EQ(r.B.enclosure, RationalInterval(R("1/12")));
  EXPECT_LT((r.A.enclosure.midpoint() - R("0.079326")).abs(), R("1e-5"));
  EXPECT_LT((r.p0.enclosure.midpoint() - R("0.081329")).abs(), R("1e-5"));
  EXPECT_LT((r.d0.enclosure.midpoint() - R("0.0020034")).abs(), R("1e-6"));
  EXPECT_EQ(r.p0.expr.simplified().str(), "(13*e^2 - 38*e + 13)/(24*e^2 - 48*e + 24)");
  EXPECT_TRUE(symbolically_equal(r.p0.expr - r.A.expr, r.B.expr - r.p0.expr));
  EXPECT_TRUE(symbolically_equal(r.d0.expr, r.B.expr - r.p0.expr));
}

TEST_F(ReciprocalSquareFamily, ZonesAndCrossing) {
  const FamilyReport& r = *report_;
  EXPECT_EQ(classify_zone(r, R("0.079")), Zone::kPositive);
  EXPECT_EQ(classify_zone(r, R("1/12")), Zone::kNegative);
  EXPECT_EQ(classify_zone(r, R("0.09")), Zone::kNegative);
  EXPECT_EQ(classify_zone(r, R("81/1000")), Zone::kCrossing);
  const RationalInterval c = isolate_crossing(*fam_, r, R("81/1000"), R("1e-12"));
  EXPECT_LT(c.width(), R("1e-12"));
  EXPECT_GT(eval_enclosure(fam_->f, c.lo() - R("1e-10"), R("1e-30")).lo(), R("81/1000"));
  EXPECT_LT(eval_enclosure(fam_->f, c.hi() + R("1e-10"), R("1e-30")).hi(), R("81/1000"));
  EXPECT_THROW(isolate_crossing(*fam_, r, R("1/12"), R("1e-6")), Error);

  // Below A: f - p certified positive at interior samples; above B: negative.
  for (int i = 1; i <= 50; ++i) {
    const Rational x = Rational(i) / Rational(51);
    EXPECT_TRUE((eval_enclosure(fam_->f, x, R("1e-30")) - RationalInterval(R("0.079"))).is_positive());
    EXPECT_TRUE((eval_enclosure(fam_->f, x, R("1e-30")) - RationalInterval(R("0.0834"))).is_negative());
  }
}

TEST(AffineFamily, LinearCases) {
  const AffineFamily dec = linear("1 - x", "1", "0");
  const FamilyReport r = analyze_affine_family(dec);
  EXPECT_EQ(r.monotone, Monotone::kDecreasing);
  EXPECT_EQ(r.A.enclosure, RationalInterval(Rational(0)));
  EXPECT_EQ(r.B.enclosure, RationalInterval(Rational(1)));
  EXPECT_EQ(r.p0.enclosure, RationalInterval(R("1/2")));
  EXPECT_EQ(r.d0.enclosure, RationalInterval(R("1/2")));
  EXPECT_TRUE(isolate_crossing(dec, r, R("1/2"), R("1e-6")).contains(R("1/2")));

  const FamilyReport inc = analyze_affine_family(linear("x", "0", "1"));
  EXPECT_EQ(inc.monotone, Monotone::kIncreasing);
  EXPECT_EQ(inc.A.enclosure, RationalInterval(Rational(0)));
  EXPECT_EQ(inc.B.enclosure, RationalInterval(Rational(1)));
}

TEST(AffineFamily, WrongEndpointRejected) {
  try {
    (void)analyze_affine_family(linear("1 - x", "1", "1/10"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kDegenerateInput);
  }
  EXPECT_THROW(analyze_affine_family(linear("1", "1", "1")), Error);
}

TEST(ParamFamily, DerivativesMatchTheProof) {
  const ParamExpFamily phi = ParamExpFamily::from_expr(parse_expression(kCascadeFamily));
  const ParamExpFamily d1 = phi.derivative_alpha();
  const ParamExpFamily d2 = d1.derivative_alpha();
  EXPECT_EQ(d1, ParamExpFamily::from_expr(parse_expression("-x*exp(-a*x) + x*(1-x) + x^2*exp(-a)")));
  EXPECT_EQ(d2, ParamExpFamily::from_expr(parse_expression("x^2*(exp(-a*x) - exp(-a))")));
  EXPECT_TRUE(phi.substitute_alpha(Rational(0)).is_zero());
  EXPECT_TRUE(d1.substitute_alpha(Rational(0)).is_zero());
  EXPECT_TRUE(phi.substitute_x(Rational(0)).is_zero());
  EXPECT_TRUE(phi.substitute_x(Rational(1)).is_zero());
}

TEST(ParamFamily, SubstitutionCarriesConstants) {
  const ParamExpFamily t = ParamExpFamily::from_expr(parse_expression("x*exp(-a*(x + 1))"));
  const AlphaSlice s = t.substitute_alpha(Rational(1));
  EXPECT_FALSE(s.exact());
  EXPECT_EQ(s.str(), "x * exp(-x) * exp(-1)");
  const mpq_class ref = mpq_class(1, 2) * oracle::exp_value(mpq_class(-3, 2));
  const RationalInterval iv = s.enclose(R("1/2"), R("1e-30"));
  EXPECT_TRUE(oracle::q(iv.lo()) <= ref + mpq_class(1, 1000000) && ref - mpq_class(1, 1000000) <= oracle::q(iv.hi()));
  EXPECT_THROW(ParamExpFamily::from_expr(parse_expression("exp(x)")), Error);
}

TEST(Cascade, QuadraticRemainderFamily) {
  const ParamExpFamily phi = ParamExpFamily::from_expr(parse_expression(kCascadeFamily));
  const std::vector<Rational> alphas{R("1/2"), Rational(1), Rational(2)};
  const CascadeReport r = cascade_check(phi, Rational(0), Rational(1), alphas);
  ASSERT_EQ(r.steps.size(), 5u);
  EXPECT_TRUE(r.passed());
  EXPECT_TRUE(r.steps[0].proof);
  EXPECT_TRUE(r.steps[1].proof);
  EXPECT_FALSE(r.steps[2].proof);
}

TEST(Cascade, ZeroAndNonzeroBase) {
  const std::vector<Rational> alphas{Rational(1)};
  EXPECT_TRUE(cascade_check(ParamExpFamily(), Rational(0), Rational(1), alphas).passed());
  const CascadeReport bad =
      cascade_check(ParamExpFamily::from_expr(parse_expression("x + a")), Rational(0), Rational(1), alphas);
  EXPECT_FALSE(bad.steps[0].passed);
  EXPECT_EQ(bad.steps[0].detail, "x");
}

TEST(Cascade, ExactSliceIsProven) {
  // d^2/da^2 of exp(-a*x) is x^2 exp(-a x): exact at every rational alpha.
  const ParamExpFamily f = ParamExpFamily::from_expr(parse_expression("exp(-a*x) - 1 + a*x"));
  const std::vector<Rational> alphas{R("1/3")};
  const CascadeReport r = cascade_check(f, Rational(0), Rational(1), alphas);
  EXPECT_TRUE(r.passed());
  EXPECT_TRUE(r.steps.back().proof);
}

TEST(Grid, PointExamples) {
  const Inequality upper = parse_inequality(kSignedUpper);
  EXPECT_EQ(check_point(upper, R("1/2"), Rational(1), R("1e-30")), PointVerdict::kHolds);
  for (int i = 0; i <= 4; ++i) {
    EXPECT_EQ(check_point(upper, Rational(i) / Rational(4), Rational(0), R("1e-30")), PointVerdict::kHolds);
  }
  EXPECT_EQ(check_point(upper, Rational(0), Rational(-3), R("1e-30")), PointVerdict::kHolds);
  EXPECT_EQ(check_point(upper, Rational(1), Rational(-3), R("1e-30")), PointVerdict::kHolds);
  EXPECT_EQ(check_point(parse_inequality(kSignedLower), Rational(2), Rational(1), R("1e-30")), PointVerdict::kHolds);
  EXPECT_EQ(check_point(parse_inequality(kSignedUpper), Rational(2), Rational(1), R("1e-30")), PointVerdict::kFails);
  EXPECT_EQ(check_point(parse_inequality("x > x"), Rational(1), Rational(0), R("1e-30")), PointVerdict::kFails);
  EXPECT_EQ(check_point(parse_inequality("e^(1/2) < (e + 4)/4"), Rational(0), Rational(0), R("1e-30")),
            PointVerdict::kHolds);
}

TEST(Grid, PrecisionMonotone) {
  const Inequality ineq = parse_inequality("exp(x) > 1 + x + x^2/2 + x^3/6");
  const PointVerdict coarse = check_point(ineq, R("1/100"), Rational(0), R("1e-6"));
  const PointVerdict fine = check_point(ineq, R("1/100"), Rational(0), R("1e-30"));
  if (coarse != PointVerdict::kUndecided) { EXPECT_EQ(coarse, fine); }
  EXPECT_EQ(fine, PointVerdict::kHolds);
}

TEST(Grid, RangesAndPoints) {
  const GridRange closed = parse_grid_range("0,1");
  EXPECT_EQ(grid_points(closed, 5), (std::vector<Rational>{Rational(0), R("1/4"), R("1/2"), R("3/4"), Rational(1)}));
  const GridRange half = parse_grid_range("(1,3]");
  EXPECT_TRUE(half.lo_open);
  const auto pts = grid_points(half, 4);
  EXPECT_EQ(pts.front(), R("3/2"));
  EXPECT_EQ(pts.back(), Rational(3));
  EXPECT_EQ(grid_points(parse_grid_range("(0,1)"), 3).front(), R("1/4"));
  EXPECT_THROW(parse_grid_range("1,0"), Error);
  EXPECT_THROW(grid_points(closed, 1), Error);
}

TEST(Grid, SmallSignedExpGrid) {
  const GridReport r =
      grid_check(parse_inequality(kSignedUpper), parse_grid_range("0,1"), parse_grid_range("-5,5"), 11, 11, R("1e-30"));
  EXPECT_EQ(r.total(), 121u);
  EXPECT_TRUE(r.fails_at.empty());
  EXPECT_TRUE(r.undecided_at.empty());
}
