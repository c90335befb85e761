#pragma once

#include <memory>
#include <optional>
#include <string>

#include "mepprove/interval.hpp"
#include "mepprove/polynomial.hpp"

namespace mepprove {

/// Immutable expression over rational literals and the constant e, with
/// + - * / and integer powers. `exp(r)` for rational r is also a leaf.
class ConstExpr {
 public:
  enum class Kind { kLiteral, kE, kExp, kAdd, kSub, kMul, kDiv, kNeg, kPow };

  ConstExpr() : ConstExpr(literal(Rational(0))) {}

  static ConstExpr literal(const Rational& value);
  static ConstExpr e();
  /// e^r for a rational exponent.
  static ConstExpr exp(const Rational& r);

  friend ConstExpr operator+(const ConstExpr& a, const ConstExpr& b);
  friend ConstExpr operator-(const ConstExpr& a, const ConstExpr& b);
  friend ConstExpr operator*(const ConstExpr& a, const ConstExpr& b);
  friend ConstExpr operator/(const ConstExpr& a, const ConstExpr& b);
  friend ConstExpr operator-(const ConstExpr& a);
  friend RationalInterval enclose_const(const ConstExpr& c, const Rational& eps);
  ConstExpr pow(long exponent) const;

  Kind kind() const;
  /// Exact value when the tree mentions no transcendental leaf.
  std::optional<Rational> exact_value() const;

  /// Interval evaluation where every transcendental leaf is enclosed to
  /// width below `delta`.
  RationalInterval eval_at(const Rational& delta) const;

  /// num(e)/den(e) with integer coefficients, unit content and positive
  /// leading denominator coefficient; nullopt for non-integer exp leaves
  /// or a symbolically zero divisor.
  struct RationalFunction {
    Polynomial num;
    Polynomial den;
  };
  std::optional<RationalFunction> as_rational_function() const;
  /// The canonical rational-function form when available, else *this.
  ConstExpr simplified() const;

  std::string str() const;

 private:
  struct Node;
  explicit ConstExpr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// Equality as rational functions of e (decidable since e is transcendental).
/// Throws kUnsupported when either side has a non-integer exp leaf.
bool symbolically_equal(const ConstExpr& a, const ConstExpr& b);

/// Enclosure of the exact value with width < eps. e comes from the
/// reciprocal of the e^{-1} bracket, tightened adaptively.
RationalInterval enclose_const(const ConstExpr& c, const Rational& eps);

}  // namespace mepprove
