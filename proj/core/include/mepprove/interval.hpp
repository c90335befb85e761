#pragma once

#include <iosfwd>
#include <string>

#include "mepprove/rational.hpp"

namespace mepprove {

/// Closed interval [lo, hi] with exact rational ends. Every arithmetic
/// operation returns an enclosure of the exact real result.
class RationalInterval {
 public:
  RationalInterval() = default;
  explicit RationalInterval(Rational point) : lo_(point), hi_(std::move(point)) {}
  RationalInterval(Rational lo, Rational hi);

  const Rational& lo() const { return lo_; }
  const Rational& hi() const { return hi_; }
  Rational width() const { return hi_ - lo_; }
  Rational midpoint() const { return (lo_ + hi_) / 2; }

  bool is_point() const { return lo_ == hi_; }
  bool contains(const Rational& v) const { return lo_ <= v && v <= hi_; }
  bool contains_zero() const { return contains(Rational(0)); }
  bool is_positive() const { return lo_.sign() > 0; }
  bool is_negative() const { return hi_.sign() < 0; }
  /// +1 or -1 when sign-definite, 0 when the interval is exactly [0, 0], and
  /// kStraddlesZero when it contains zero in its interior or at one end only.
  int certified_sign() const;
  bool subset_of(const RationalInterval& other) const {
    return other.lo_ <= lo_ && hi_ <= other.hi_;
  }
  bool overlaps(const RationalInterval& other) const {
    return !(hi_ < other.lo_ || other.hi_ < lo_);
  }

  RationalInterval pow(long exponent) const;
  RationalInterval reciprocal() const;

  RationalInterval& operator+=(const RationalInterval& rhs);
  RationalInterval& operator-=(const RationalInterval& rhs);
  RationalInterval& operator*=(const RationalInterval& rhs);
  RationalInterval& operator/=(const RationalInterval& rhs);

  friend RationalInterval operator+(RationalInterval a, const RationalInterval& b) { return a += b; }
  friend RationalInterval operator-(RationalInterval a, const RationalInterval& b) { return a -= b; }
  friend RationalInterval operator*(RationalInterval a, const RationalInterval& b) { return a *= b; }
  friend RationalInterval operator/(RationalInterval a, const RationalInterval& b) { return a /= b; }
  friend RationalInterval operator-(const RationalInterval& a) { return {-a.hi_, -a.lo_}; }
  friend RationalInterval operator*(const Rational& s, const RationalInterval& a);

  friend bool operator==(const RationalInterval&, const RationalInterval&) = default;

  std::string str() const;
  friend std::ostream& operator<<(std::ostream& os, const RationalInterval& iv);

 private:
  Rational lo_;
  Rational hi_;
};

inline constexpr int kStraddlesZero = 2;

}  // namespace mepprove
