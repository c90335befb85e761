#include "mepprove/interval.hpp"

#include <algorithm>
#include <ostream>

#include "mepprove/error.hpp"
#include "mepprove/exp_enclosure.hpp"

namespace mepprove {

RationalInterval::RationalInterval(Rational lo, Rational hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
  if (hi_ < lo_) throw Error(ErrorKind::kPrecondition, "interval with lo > hi");
}

int RationalInterval::certified_sign() const {
  if (lo_.sign() > 0) return 1;
  if (hi_.sign() < 0) return -1;
  if (lo_.is_zero() && hi_.is_zero()) return 0;
  return kStraddlesZero;
}

RationalInterval& RationalInterval::operator+=(const RationalInterval& rhs) {
  lo_ += rhs.lo_;
  hi_ += rhs.hi_;
  return *this;
}

RationalInterval& RationalInterval::operator-=(const RationalInterval& rhs) {
  Rational lo = lo_ - rhs.hi_;
  hi_ -= rhs.lo_;
  lo_ = std::move(lo);
  return *this;
}

RationalInterval& RationalInterval::operator*=(const RationalInterval& rhs) {
  if (is_point() && rhs.is_point()) {
    lo_ *= rhs.lo_;
    hi_ = lo_;
    return *this;
  }
  Rational a = lo_ * rhs.lo_, b = lo_ * rhs.hi_, c = hi_ * rhs.lo_, d = hi_ * rhs.hi_;
  lo_ = std::min({a, b, c, d});
  hi_ = std::max({a, b, c, d});
  return *this;
}

RationalInterval RationalInterval::reciprocal() const {
  if (contains_zero()) {
    throw Error(ErrorKind::kIndeterminate, "division by an enclosure containing zero " + str());
  }
  return {hi_.reciprocal(), lo_.reciprocal()};
}

RationalInterval& RationalInterval::operator/=(const RationalInterval& rhs) {
  return *this *= rhs.reciprocal();
}

RationalInterval operator*(const Rational& s, const RationalInterval& a) {
  if (s.sign() >= 0) return {s * a.lo_, s * a.hi_};
  return {s * a.hi_, s * a.lo_};
}

RationalInterval RationalInterval::pow(long exponent) const {
  if (exponent < 0) return reciprocal().pow(-exponent);
  if (exponent == 0) return RationalInterval(Rational(1));
  Rational l = lo_.pow(exponent), h = hi_.pow(exponent);
  if (exponent % 2 == 1 || lo_.sign() >= 0) return {std::move(l), std::move(h)};
  if (hi_.sign() <= 0) return {std::move(h), std::move(l)};
  return {Rational(0), std::max(l, h)};
}

std::string RationalInterval::str() const { return "[" + lo_.str() + ", " + hi_.str() + "]"; }

std::ostream& operator<<(std::ostream& os, const RationalInterval& iv) { return os << iv.str(); }

// ---------------------------------------------------------------------------

ExpNegSeries::ExpNegSeries(Rational t) : t_(std::move(t)), term_(1), odd_sum_(1), even_sum_(1) {}

void ExpNegSeries::advance() {
  // T_{2m-1} = T_{2m-2} - t^{2m-1}/(2m-1)!, T_{2m} = T_{2m-1} + t^{2m}/(2m)!
  ++k_;
  term_ *= t_;
  term_ /= Rational(k_);
  odd_sum_ = even_sum_ - term_;
  ++k_;
  term_ *= t_;
  term_ /= Rational(k_);
  even_sum_ = odd_sum_ + term_;
  ++m_;
}

RationalInterval enclose_exp_neg(const Rational& t, const Rational& eps, unsigned max_m, unsigned min_m) {
  if (t.sign() < 0) throw Error(ErrorKind::kPrecondition, "enclose_exp_neg needs t >= 0");
  if (eps.sign() <= 0) throw Error(ErrorKind::kPrecondition, "eps must be positive");
  if (t.is_zero()) return RationalInterval(Rational(1));
  ExpNegSeries series(t);
  while (series.m() < max_m) {
    series.advance();
    if (series.m() >= min_m && series.even_sum() - series.odd_sum() < eps) return series.bracket();
  }
  throw Error(ErrorKind::kBudgetExceeded,
              "e^-t bracket at t = " + t.str() + " needs m > " + std::to_string(max_m));
}

RationalInterval enclose_exp_neg_at(const Rational& t, unsigned m) {
  if (t.sign() < 0) throw Error(ErrorKind::kPrecondition, "enclose_exp_neg_at needs t >= 0");
  if (m == 0) throw Error(ErrorKind::kPrecondition, "m must be positive");
  ExpNegSeries series(t);
  while (series.m() < m) series.advance();
  return series.bracket();
}

RationalInterval enclose_exp(const Rational& r, const Rational& eps, unsigned max_m) {
  if (r.sign() <= 0) return enclose_exp_neg(-r, eps, max_m);
  ExpNegSeries series(r);
  while (series.m() < max_m) {
    series.advance();
    const Rational& lo = series.odd_sum();
    if (lo.sign() <= 0) continue;
    const Rational& hi = series.even_sum();
    // width of [1/hi, 1/lo]
    if ((hi - lo) / (lo * hi) < eps) return {hi.reciprocal(), lo.reciprocal()};
  }
  throw Error(ErrorKind::kBudgetExceeded,
              "e^r bracket at r = " + r.str() + " needs m > " + std::to_string(max_m));
}

long floor_log2(const Rational& v) {
  if (v.sign() <= 0) throw Error(ErrorKind::kPrecondition, "floor_log2 of a non-positive value");
  const long n = static_cast<long>(mpz_sizeinbase(v.raw().get_num_mpz_t(), 2));
  const long d = static_cast<long>(mpz_sizeinbase(v.raw().get_den_mpz_t(), 2));
  return n - d;
}

}  // namespace mepprove
