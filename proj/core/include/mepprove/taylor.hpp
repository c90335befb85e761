#pragma once

#include "mepprove/interval.hpp"
#include "mepprove/polynomial.hpp"

namespace mepprove {

enum class BoundSide { kLower, kUpper };

/// T_n(q x), the degree-n Maclaurin polynomial of e^{-x} at the scaled
/// argument. For x > 0 it lies below (q x > 0, n odd) or above (n even)
/// e^{-q x}.
struct TaylorBound {
  unsigned order = 0;
  Rational scale{1};
  Polynomial poly;
  BoundSide side = BoundSide::kUpper;
};

/// Maclaurin polynomial T_n(q x); the side follows the parity of n.
TaylorBound maclaurin(unsigned n, const Rational& q = Rational(1));

/// Shorthand for maclaurin(n).poly.
Polynomial maclaurin_poly(unsigned n);

enum class CoeffSign { kPositive, kNegative };

/// Order for a term whose coefficient has the given sign: 2l - 1 when the
/// exponential must be bounded from below, 2l when from above.
unsigned select_order(CoeffSign sign, unsigned l);

/// Enclosure of F_n(x) = T_n(x) - e^{-x}, width < eps. For x > 0 the result
/// is sign-definite: positive for even n, negative for odd n.
RationalInterval gap_enclosure(unsigned n, const Rational& x, const Rational& eps);

/// Enclosure of the unique positive root c_{2m-1} of T_{2m-1}.
struct OddRootRecord {
  unsigned m = 0;
  RationalInterval enclosure;
};

OddRootRecord odd_root(unsigned m, const Rational& eps);

}  // namespace mepprove
