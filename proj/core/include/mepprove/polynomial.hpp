#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mepprove/interval.hpp"
#include "mepprove/rational.hpp"

namespace mepprove {

/// Dense univariate polynomial with exact rational coefficients; index i holds
/// the coefficient of x^i. The zero polynomial has no coefficients.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Rational> coefficients);
  Polynomial(std::initializer_list<Rational> coefficients)
      : Polynomial(std::vector<Rational>(coefficients)) {}

  static Polynomial constant(Rational c);
  static Polynomial monomial(Rational c, unsigned degree);

  bool is_zero() const { return coeffs_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  std::span<const Rational> coefficients() const { return coeffs_; }
  Rational coefficient(std::size_t power) const;
  const Rational& leading() const;

  Rational eval(const Rational& x) const;
  RationalInterval eval(const RationalInterval& x) const;

  Polynomial derivative() const;
  /// P(q x).
  Polynomial compose_linear(const Rational& q) const;
  Polynomial scale(const Rational& c) const;
  /// Integer coefficients with unit content, a positive multiple of *this.
  Polynomial primitive() const;
  Polynomial monic() const;

  Polynomial& operator+=(const Polynomial& rhs);
  Polynomial& operator-=(const Polynomial& rhs);
  Polynomial& operator*=(const Polynomial& rhs);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const Polynomial& b) { return a *= b; }
  friend Polynomial operator-(const Polynomial& a) { return a.scale(Rational(-1)); }
  friend bool operator==(const Polynomial&, const Polynomial&) = default;

  /// Quotient and remainder; throws on a zero divisor.
  static std::pair<Polynomial, Polynomial> divmod(const Polynomial& num, const Polynomial& den);

  /// "c0 + c1*x + c2*x^2 + ..." with rationals in num/den form.
  std::string str(std::string_view var = "x", bool descending = false) const;
  friend std::ostream& operator<<(std::ostream& os, const Polynomial& p);

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

/// Monic gcd (zero when both inputs are zero).
Polynomial gcd(const Polynomial& a, const Polynomial& b);

/// P / gcd(P, P'), primitive with the sign of P's leading coefficient kept.
Polynomial squarefree_part(const Polynomial& p);

}  // namespace mepprove
