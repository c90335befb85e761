#pragma once

#include <memory>
#include <string>
#include <vector>

#include "mepprove/rational.hpp"

namespace mepprove {

/// Immutable expression tree over rationals, the variables x and a, the
/// constant e, exp(.), sign(.), + - * / and integer powers.
class Expr {
 public:
  enum class Kind { kNumber, kVarX, kVarA, kE, kExp, kSign, kAdd, kSub, kMul, kDiv, kNeg, kPow };

  static Expr number(const Rational& v);
  static Expr var_x();
  static Expr var_a();
  static Expr e();
  static Expr exp(const Expr& arg);
  static Expr sign(const Expr& arg);
  static Expr binary(Kind op, const Expr& lhs, const Expr& rhs);
  static Expr neg(const Expr& arg);
  static Expr pow(const Expr& base, long exponent);

  Kind kind() const;
  const Rational& value() const;  // kNumber
  long exponent() const;          // kPow
  const Expr& lhs() const;        // unary argument, or left operand
  const Expr& rhs() const;

  bool mentions_x() const;
  bool mentions_a() const;

  /// Fully determined text; parsing it yields an identical tree.
  std::string str() const;

  friend bool operator==(const Expr& a, const Expr& b);

 private:
  struct Node;
  static Expr make(Kind k, std::vector<Expr> children = {}, long exponent = 0);
  explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

enum class Comparator { kGreater, kLess, kGreaterEq, kLessEq };

std::string_view to_string(Comparator c);

struct Inequality {
  Expr left;
  Comparator cmp = Comparator::kGreater;
  Expr right;

  bool strict() const { return cmp == Comparator::kGreater || cmp == Comparator::kLess; }
  /// left - right for > and >=, right - left for < and <=; the goal is then "> 0" (or ">= 0").
  Expr oriented_difference() const;
  std::string str() const;
  friend bool operator==(const Inequality&, const Inequality&) = default;
};

}  // namespace mepprove
