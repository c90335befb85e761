#include <gtest/gtest.h>

#include <random>

#include "mepprove/sturm.hpp"
#include "mepprove/taylor.hpp"
#include "oracles.hpp"

using namespace mepprove;

namespace {

Rational R(const char* s) { return Rational::parse(s); }

}  // namespace

TEST(Taylor, CoefficientsAndSide) {
  const TaylorBound t = maclaurin(3);
  EXPECT_EQ(t.poly, (Polynomial{Rational(1), Rational(-1), R("1/2"), R("-1/6")}));
  EXPECT_EQ(t.side, BoundSide::kLower);
  EXPECT_EQ(maclaurin(4).side, BoundSide::kUpper);
  const TaylorBound s = maclaurin(2, Rational(3));
  EXPECT_EQ(s.poly, (Polynomial{Rational(1), Rational(-3), R("9/2")}));
  EXPECT_EQ(maclaurin(0).poly, Polynomial{Rational(1)});
}

TEST(Taylor, MatchesDirectSums) {
  std::mt19937_64 rng(17);
  for (unsigned n = 0; n <= 25; ++n) {
    const mpq_class x = oracle::random_rational(rng, 0, 6);
    const mpq_class q = oracle::random_rational(rng, 0, 3);
    EXPECT_EQ(oracle::q(maclaurin(n, Rational(q)).poly.eval(Rational(x))), oracle::taylor_sum(n, q * x));
  }
}

TEST(Taylor, OrderSelection) {
  EXPECT_EQ(select_order(CoeffSign::kPositive, 1), 1u);
  EXPECT_EQ(select_order(CoeffSign::kPositive, 6), 11u);
  EXPECT_EQ(select_order(CoeffSign::kNegative, 1), 2u);
  EXPECT_EQ(select_order(CoeffSign::kNegative, 6), 12u);
}

TEST(Taylor, GapIsSignDefinite) {
  std::mt19937_64 rng(19);
  for (unsigned n = 1; n <= 12; ++n) {
    const Rational x(oracle::random_rational(rng, 0, 5));
    const RationalInterval g = gap_enclosure(n, x, R("1e-30"));
    EXPECT_EQ(g.certified_sign(), n % 2 == 0 ? 1 : -1) << n;
    EXPECT_LT(g.width(), R("1e-30"));
  }
}

TEST(Taylor, OddRootsIncreaseFromOne) {
  const OddRootRecord first = odd_root(1, R("1e-20"));
  EXPECT_EQ(first.enclosure, RationalInterval(Rational(1)));
  Rational prev_hi = first.enclosure.hi();
  for (unsigned m = 2; m <= 8; ++m) {
    const OddRootRecord r = odd_root(m, R("1e-20"));
    EXPECT_GT(r.enclosure.lo(), prev_hi);
    EXPECT_LT(r.enclosure.hi(), Rational(static_cast<long>(2 * m + 1)));
    prev_hi = r.enclosure.hi();
  }
}

TEST(Taylor, ConsecutiveSameParityMeetAtNPlusTwo) {
  for (unsigned n = 0; n <= 12; ++n) {
    const Rational d(static_cast<long>(n + 2));
    const Polynomial diff = maclaurin_poly(n + 2) - maclaurin_poly(n);
    EXPECT_EQ(diff.eval(d), Rational(0));
    EXPECT_EQ(count_roots_open(diff, Rational(0), d), 0);
  }
}
