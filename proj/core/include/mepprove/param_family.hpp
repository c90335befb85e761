#pragma once

#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "mepprove/ast.hpp"
#include "mepprove/interval.hpp"
#include "mepprove/mep.hpp"

namespace mepprove {

/// c * x^p * alpha^r * e^{-alpha (u x + v)}.
struct ParamTerm {
  Rational c;
  unsigned p = 0;
  unsigned r = 0;
  Rational u;
  Rational v;
};

/// Exact value of the family at a fixed alpha0: sum over k of e^{-k} M_k(x),
/// where M_k has exponential rates alpha0 * u.
struct AlphaSlice {
  Rational alpha;
  std::map<Rational, std::vector<RationalQTerm>> by_constant;  // k = alpha0 * v -> terms

  /// True when no irrational constant e^{-k}, k != 0, survives.
  bool exact() const;
  /// The k = 0 part; valid as the whole slice when exact().
  std::vector<RationalQTerm> exact_terms() const;
  bool is_zero() const { return by_constant.empty(); }
  RationalInterval enclose(const Rational& x, const Rational& eps) const;
  std::string str() const;
};

/// Finite sum of ParamTerm with terms merged on (p, r, u, v).
class ParamExpFamily {
 public:
  ParamExpFamily() = default;
  explicit ParamExpFamily(const std::vector<ParamTerm>& terms);

  /// Reads an expression in x and a, where a plays the role of alpha. Every
  /// exp argument must have the form -a (u x + v).
  static ParamExpFamily from_expr(const Expr& e);

  std::vector<ParamTerm> terms() const;
  bool is_zero() const { return terms_.empty(); }

  ParamExpFamily derivative_alpha() const;
  AlphaSlice substitute_alpha(const Rational& alpha0) const;
  /// A family in alpha alone (p = 0, u = 0).
  ParamExpFamily substitute_x(const Rational& x0) const;
  RationalInterval enclose(const Rational& alpha, const Rational& x, const Rational& eps) const;

  ParamExpFamily& operator+=(const ParamExpFamily& rhs);
  friend ParamExpFamily operator+(ParamExpFamily a, const ParamExpFamily& b) { return a += b; }
  friend ParamExpFamily operator*(const ParamExpFamily& a, const ParamExpFamily& b);
  ParamExpFamily scale(const Rational& c) const;
  friend bool operator==(const ParamExpFamily&, const ParamExpFamily&) = default;

  std::string str() const;

 private:
  using Key = std::tuple<unsigned, unsigned, Rational, Rational>;  // p, r, u, v
  void add(const Rational& c, unsigned p, unsigned r, const Rational& u, const Rational& v);
  std::map<Key, Rational> terms_;
};

/// Mep in z with x = v z, from terms with arbitrary rational rates; rates are
/// first shifted so the smallest is zero (a positive factor on any interval).
RescaledMep slice_to_mep(const std::vector<RationalQTerm>& terms, const Rational& a, const Rational& b);

}  // namespace mepprove
