#pragma once

#include <vector>

#include "mepprove/polynomial.hpp"

namespace mepprove {

/// Canonical Sturm sequence of the squarefree part of a polynomial. Each
/// member is kept primitive over the integers; positive rescaling does not
/// change sign-variation counts.
class SturmChain {
 public:
  explicit SturmChain(const Polynomial& p);

  /// Sign variations at x, skipping zero entries.
  int variations(const Rational& x) const;
  /// Number of distinct roots in the half-open interval (a, b].
  int count_half_open(const Rational& a, const Rational& b) const;

  std::size_t size() const { return chain_.size(); }
  std::vector<Polynomial> sequence() const;
  /// The squarefree polynomial heading the chain.
  Polynomial head() const;

 private:
  std::vector<std::vector<mpz_class>> chain_;
};

/// V(a), V(b) and whether b is a root of P; distinct roots in (a, b) equal
/// v_a - v_b - endpoint_adjust.
struct SturmCounts {
  int v_a = 0;
  int v_b = 0;
  int endpoint_adjust = 0;
  int roots() const { return v_a - v_b - endpoint_adjust; }
};

SturmCounts sturm_counts(const Polynomial& p, const Rational& a, const Rational& b);

/// Distinct real roots strictly inside (a, b).
int count_roots_open(const Polynomial& p, const Rational& a, const Rational& b);

/// True iff P > 0 on the open interval (a, b): no interior root and a
/// positive value at the midpoint. Roots at a or b are tolerated.
bool is_positive_on(const Polynomial& p, const Rational& a, const Rational& b);

/// Sturm-driven bisection down to width < eps; requires exactly one root in (a, b).
RationalInterval isolate_root(const Polynomial& p, const Rational& a, const Rational& b,
                              const Rational& eps);

}  // namespace mepprove
