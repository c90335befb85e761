#pragma once

#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mepprove/interval.hpp"
#include "mepprove/polynomial.hpp"

namespace mepprove {

/// alpha * x^p * (e^{-x})^q.
struct MepTerm {
  Rational alpha;
  unsigned p = 0;
  long q = 0;

  friend bool operator==(const MepTerm&, const MepTerm&) = default;
};

/// Mixed exponential polynomial, stored as a bivariate polynomial in
/// (x, y) with y standing for e^{-x}. Terms are merged and sorted by (q, p);
/// zero coefficients never appear. Negative q is allowed only as the state
/// before normalize().
class Mep {
 public:
  Mep() = default;
  explicit Mep(std::span<const MepTerm> terms);
  Mep(std::initializer_list<MepTerm> terms) : Mep(std::span<const MepTerm>(terms.begin(), terms.size())) {}

  static Mep constant(const Rational& c);
  static Mep monomial(const Rational& alpha, unsigned p, long q);
  /// c(x) * y^q.
  static Mep from_polynomial(const Polynomial& c, long q = 0);

  std::vector<MepTerm> terms() const;
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_normalized() const { return terms_.empty() || terms_.begin()->first.first >= 0; }
  bool is_polynomial() const;
  long min_q() const;
  long max_q() const;
  unsigned max_p() const;

  /// Multiplied by y^{-q_min} when some q is negative.
  Mep normalized() const;
  Mep differentiate() const;
  /// Multiplied by y^k.
  Mep shift_q(long k) const;
  Mep scale(const Rational& c) const;
  Mep pow(unsigned exponent) const;
  /// The q = 0 polynomial part when is_polynomial().
  Polynomial as_polynomial() const;

  /// Coefficient polynomial c_q(x) of each y^q, in increasing q.
  std::vector<std::pair<long, Polynomial>> group_by_q() const;
  static Mep from_groups(std::span<const std::pair<long, Polynomial>> groups);

  bool divisible_by_x() const;
  Mep divide_by_x() const;
  /// Exact divisibility by (1 - y) as a polynomial in y over Q[x].
  bool divisible_by_one_minus_y() const;
  Mep divide_by_one_minus_y() const;

  /// Interval evaluation at x given an enclosure of y = e^{-x}.
  RationalInterval eval_with(const Rational& x, const RationalInterval& y) const;

  Mep& operator+=(const Mep& rhs);
  Mep& operator-=(const Mep& rhs);
  friend Mep operator+(Mep a, const Mep& b) { return a += b; }
  friend Mep operator-(Mep a, const Mep& b) { return a -= b; }
  friend Mep operator*(const Mep& a, const Mep& b);
  friend Mep operator-(const Mep& a) { return a.scale(Rational(-1)); }
  friend bool operator==(const Mep&, const Mep&) = default;

  /// Canonical text: terms "alpha * x^p * exp(-q*x)" with the factors
  /// dropped for p = 0, q = 0 and alpha = 1.
  std::string str() const;
  friend std::ostream& operator<<(std::ostream& os, const Mep& f);

 private:
  void add_term(const Rational& alpha, unsigned p, long q);
  std::map<std::pair<long, unsigned>, Rational> terms_;  // (q, p) -> alpha
};

/// Multiplies through by e^{|q_min| x} so that every q is nonnegative; the
/// sign on any x-interval is unchanged.
Mep normalize(std::span<const MepTerm> terms);

/// alpha * x^p * e^{-q x} with rational q >= 0.
struct RationalQTerm {
  Rational alpha;
  unsigned p = 0;
  Rational q;
};

/// Result of substituting x = v z so that every q becomes an integer.
struct RescaledMep {
  Mep mep;  // in the variable z
  Rational v{1};
  Rational a;
  Rational b;
};

RescaledMep rescale_rational_q(std::span<const RationalQTerm> terms, const Rational& a, const Rational& b);

/// Quotient of two MEPs. Not reduced by a general gcd; see reduce_trivial_factors.
class ExpRational {
 public:
  ExpRational() : den_(Mep::constant(Rational(1))) {}
  explicit ExpRational(Mep num) : num_(std::move(num)), den_(Mep::constant(Rational(1))) {}
  ExpRational(Mep num, Mep den);

  const Mep& numerator() const { return num_; }
  const Mep& denominator() const { return den_; }
  bool is_mep() const;

  /// Quotient rule, denominator squared.
  ExpRational differentiate() const;
  /// Both parts multiplied by the same y^k so every q is nonnegative.
  ExpRational normalized() const;
  /// Cancels common factors x, y and (1 - y) by exact division.
  ExpRational reduce_trivial_factors() const;

  ExpRational& operator+=(const ExpRational& rhs);
  ExpRational& operator-=(const ExpRational& rhs);
  ExpRational& operator*=(const ExpRational& rhs);
  ExpRational& operator/=(const ExpRational& rhs);
  friend ExpRational operator+(ExpRational a, const ExpRational& b) { return a += b; }
  friend ExpRational operator-(ExpRational a, const ExpRational& b) { return a -= b; }
  friend ExpRational operator*(ExpRational a, const ExpRational& b) { return a *= b; }
  friend ExpRational operator/(ExpRational a, const ExpRational& b) { return a /= b; }
  friend bool operator==(const ExpRational&, const ExpRational&) = default;

  std::string str() const;

 private:
  Mep num_;
  Mep den_;
};

/// Certified value of f at x with width < eps.
RationalInterval eval_enclosure(const Mep& f, const Rational& x, const Rational& eps);
RationalInterval eval_enclosure(const ExpRational& f, const Rational& x, const Rational& eps);

}  // namespace mepprove
