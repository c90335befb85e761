#include "mepprove/taylor.hpp"

#include "mepprove/error.hpp"
#include "mepprove/exp_enclosure.hpp"
#include "mepprove/sturm.hpp"

namespace mepprove {

TaylorBound maclaurin(unsigned n, const Rational& q) {
  if (q.sign() <= 0) throw Error(ErrorKind::kPrecondition, "Taylor scale must be positive");
  std::vector<Rational> coeffs(n + 1);
  Rational c(1);
  const Rational minus_q = -q;
  for (unsigned k = 0; k <= n; ++k) {
    if (k > 0) c = c * minus_q / Rational(k);
    coeffs[k] = c;
  }
  TaylorBound bound;
  bound.order = n;
  bound.scale = q;
  bound.poly = Polynomial(std::move(coeffs));
  bound.side = (n % 2 == 1) ? BoundSide::kLower : BoundSide::kUpper;
  return bound;
}

Polynomial maclaurin_poly(unsigned n) { return maclaurin(n).poly; }

unsigned select_order(CoeffSign sign, unsigned l) {
  if (l == 0) throw Error(ErrorKind::kPrecondition, "l must be at least 1");
  return sign == CoeffSign::kPositive ? 2 * l - 1 : 2 * l;
}

RationalInterval gap_enclosure(unsigned n, const Rational& x, const Rational& eps) {
  if (x.sign() < 0) throw Error(ErrorKind::kPrecondition, "gap_enclosure needs x >= 0");
  if (x.is_zero()) return RationalInterval(Rational(0));
  const RationalInterval tn(maclaurin_poly(n).eval(x));
  // Brackets of order above n; tighten until the gap is sign-definite.
  ExpNegSeries series(x);
  while (series.m() < kDefaultExpOrderCap) {
    series.advance();
    if (2 * series.m() - 1 <= n) continue;
    RationalInterval gap = tn - series.bracket();
    if (gap.width() < eps && gap.certified_sign() != kStraddlesZero) return gap;
  }
  throw Error(ErrorKind::kBudgetExceeded, "gap enclosure for n = " + std::to_string(n));
}

OddRootRecord odd_root(unsigned m, const Rational& eps) {
  if (m == 0) throw Error(ErrorKind::kPrecondition, "m must be at least 1");
  const unsigned n = 2 * m - 1;
  const Polynomial t = maclaurin_poly(n);
  // T_{2m+1}(2m+1) < 0 places the root below 2m+1; double if that ever fails.
  Rational hi(2 * m + 1);
  while (count_roots_open(t, Rational(0), hi) + (t.eval(hi).is_zero() ? 1 : 0) == 0) hi *= Rational(2);
  if (t.eval(hi).is_zero()) return {m, RationalInterval(hi)};
  return {m, isolate_root(t, Rational(0), hi, eps)};
}

}  // namespace mepprove
