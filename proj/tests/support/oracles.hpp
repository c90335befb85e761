#pragma once

// Test-only reference computations. Nothing here calls into the library's
// polynomial, Taylor or enclosure code.

#include <mpfr.h>

#include <gmpxx.h>

#include <random>
#include <vector>

#include "mepprove/rational.hpp"

namespace oracle {

inline mpq_class q(const mepprove::Rational& r) { return r.raw(); }

/// e^r to about `bits` bits, returned as a rational.
inline mpq_class exp_value(const mpq_class& r, mpfr_prec_t bits = 600) {
  mpfr_t x;
  mpfr_init2(x, bits);
  mpfr_set_q(x, r.get_mpq_t(), MPFR_RNDN);
  mpfr_exp(x, x, MPFR_RNDN);
  mpq_class out;
  mpfr_get_q(out.get_mpq_t(), x);
  mpfr_clear(x);
  return out;
}

inline mpq_class factorial(unsigned n) {
  mpz_class f = 1;
  for (unsigned k = 2; k <= n; ++k) f *= k;
  return mpq_class(f);
}

/// sum_{k<=n} (-t)^k / k!, by direct summation.
inline mpq_class taylor_sum(unsigned n, const mpq_class& t) {
  mpq_class sum = 0, term = 1;
  for (unsigned k = 0; k <= n; ++k) {
    if (k > 0) term = term * (-t) / k;
    sum += term;
  }
  return sum;
}

/// Coefficients of prod (x - r_i) in increasing degree.
inline std::vector<mpq_class> from_roots(const std::vector<mpq_class>& roots, const mpq_class& lead = 1) {
  std::vector<mpq_class> c{lead};
  for (const auto& r : roots) {
    std::vector<mpq_class> next(c.size() + 1, 0);
    for (std::size_t i = 0; i < c.size(); ++i) {
      next[i + 1] += c[i];
      next[i] -= r * c[i];
    }
    c = std::move(next);
  }
  return c;
}

inline mpq_class random_rational(std::mt19937_64& rng, const mpq_class& lo, const mpq_class& hi, long den = 997) {
  std::uniform_int_distribution<long> d(1, den - 1);
  mpq_class t(d(rng), den);
  t.canonicalize();
  return lo + (hi - lo) * t;
}

}  // namespace oracle
