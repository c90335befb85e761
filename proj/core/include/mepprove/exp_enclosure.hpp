#pragma once

#include <cstdint>
#include <optional>
#include <utility>

#include "mepprove/error.hpp"
#include "mepprove/interval.hpp"

namespace mepprove {

/// Default cap on m for the bracket [T_{2m-1}(t), T_{2m}(t)].
inline constexpr unsigned kDefaultExpOrderCap = 200;

/// Consecutive alternating partial sums of the series of e^{-t}. Each step
/// advances m by one and exposes the bracket [T_{2m-1}(t), T_{2m}(t)].
class ExpNegSeries {
 public:
  explicit ExpNegSeries(Rational t);

  /// Moves to the next m (starting from m = 1).
  void advance();
  unsigned m() const { return m_; }
  const Rational& odd_sum() const { return odd_sum_; }    // T_{2m-1}(t)
  const Rational& even_sum() const { return even_sum_; }  // T_{2m}(t)
  RationalInterval bracket() const { return {odd_sum_, even_sum_}; }

 private:
  Rational t_;
  Rational term_;  // t^k / k! for the last k added
  unsigned k_ = 0;
  unsigned m_ = 0;
  Rational odd_sum_;
  Rational even_sum_;
};

/// [T_{2m-1}(t), T_{2m}(t)] for the least m >= min_m with width < eps;
/// exactly [1, 1] at t = 0.
RationalInterval enclose_exp_neg(const Rational& t, const Rational& eps,
                                 unsigned max_m = kDefaultExpOrderCap, unsigned min_m = 1);

/// The bracket at a fixed m.
RationalInterval enclose_exp_neg_at(const Rational& t, unsigned m);

/// Enclosure of e^r for any rational r, width < eps. Positive r goes through
/// the reciprocal of the e^{-r} bracket.
RationalInterval enclose_exp(const Rational& r, const Rational& eps,
                             unsigned max_m = kDefaultExpOrderCap);

/// Approximately floor(log2 v) for v > 0 (off by at most one; sizes tolerances).
long floor_log2(const Rational& v);

/// Repeatedly evaluates `compute(delta)` with a shrinking internal tolerance
/// until the returned enclosure is narrower than `eps`. Indeterminate errors
/// (e.g. a denominator enclosure containing zero) trigger another round; they
/// are rethrown once the round budget is spent.
template <class Compute>
RationalInterval refine_until(const Rational& eps, Compute&& compute, int max_rounds = 40) {
  long bits = floor_log2(eps) - 4;  // internal tolerance is 2^bits
  std::optional<Error> last_indeterminate;
  for (int round = 0; round < max_rounds; ++round) {
    const Rational delta = Rational(2).pow(bits);
    try {
      RationalInterval result = compute(delta);
      const Rational w = result.width();
      if (w < eps) return result;
      const long excess = floor_log2(w) - floor_log2(eps);
      bits -= std::max<long>(excess, 0) + 8;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::kIndeterminate) throw;
      last_indeterminate = e;
      bits -= 32 + round * 16;
    }
  }
  if (last_indeterminate) throw *last_indeterminate;
  throw Error(ErrorKind::kBudgetExceeded, "enclosure did not reach the requested width");
}

}  // namespace mepprove
