#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "mepprove/ast.hpp"
#include "mepprove/interval.hpp"

namespace mepprove {

/// Rational range with optionally open ends, e.g. "0,1", "[0,1]", "(1,3]".
struct GridRange {
  Rational lo;
  Rational hi;
  bool lo_open = false;
  bool hi_open = false;
};

GridRange parse_grid_range(std::string_view text);

/// `steps` points: closed ends are included and the points are equally
/// spaced; an open end is excluded by the same spacing.
std::vector<Rational> grid_points(const GridRange& r, unsigned steps);

struct GridPoint {
  Rational x;
  Rational a;
};

enum class PointVerdict { kHolds, kFails, kUndecided };

/// Classifies one point. left - right is first reduced to an exact sum of
/// c e^r; an empty sum is an exact equality. Otherwise the sum is enclosed
/// with tolerances shrinking down to eps.
PointVerdict check_point(const Inequality& ineq, const Rational& x, const Rational& a, const Rational& eps);

struct GridReport {
  std::vector<GridPoint> holds_at;
  std::vector<GridPoint> fails_at;
  std::vector<GridPoint> undecided_at;
  std::size_t total() const { return holds_at.size() + fails_at.size() + undecided_at.size(); }
};

GridReport grid_check(const Inequality& ineq, const GridRange& x_range, const GridRange& a_range, unsigned x_steps,
                      unsigned a_steps, const Rational& eps);

std::string grid_report_to_json(const GridReport& r, int indent = 2);

/// Certified enclosure of an expression at (x, a) with width < eps.
RationalInterval enclose_at(const Expr& e, const Rational& x, const Rational& a, const Rational& eps);

}  // namespace mepprove
