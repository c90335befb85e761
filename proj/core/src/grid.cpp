#include "mepprove/grid.hpp"

#include <map>
#include <optional>

#include <nlohmann/json.hpp>

#include "mepprove/error.hpp"
#include "mepprove/exp_enclosure.hpp"
#include "mepprove/parser.hpp"

namespace mepprove {

using nlohmann::json;

namespace {

using K = Expr::Kind;

// sum of c * e^r, merged on r
using ExpSum = std::map<Rational, Rational>;

void add_into(ExpSum& s, const Rational& r, const Rational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = s.emplace(r, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) s.erase(it);
  }
}

ExpSum product(const ExpSum& l, const ExpSum& r) {
  ExpSum out;
  for (const auto& [rl, cl] : l) {
    for (const auto& [rr, cr] : r) add_into(out, rl + rr, cl * cr);
  }
  return out;
}

RationalInterval enclose_sum(const ExpSum& s, const Rational& eps) {
  if (s.empty()) return RationalInterval(Rational(0));
  if (s.size() == 1 && s.begin()->first.is_zero()) return RationalInterval(s.begin()->second);
  Rational mass(0);
  for (const auto& [r, c] : s) mass += c.abs();
  return refine_until(eps, [&](const Rational& delta) {
    RationalInterval sum(Rational(0));
    for (const auto& [r, c] : s) sum = sum + c * enclose_exp(r, delta / mass);
    return sum;
  });
}

// Certified sign, tightening down to 2^-4096 before giving up.
int sum_sign(const ExpSum& s) {
  if (s.empty()) return 0;
  Rational eps = Rational(1) / Rational(2).pow(32);
  for (int round = 0; round < 8; ++round) {
    const int sign = enclose_sum(s, eps).certified_sign();
    if (sign != kStraddlesZero) return sign;
    eps = eps * eps;
  }
  throw Error(ErrorKind::kIndeterminate, "sign of a nonzero exponential sum not resolved");
}

Rational point_value(const BilinearForm& f, const Rational& x, const Rational& a) {
  return f.c0 + f.cx * x + f.ca * a + f.cxa * a * x;
}

std::optional<ExpSum> exact_sum(const Expr& e, const Rational& x, const Rational& a) {
  auto constant = [](const Rational& v) {
    ExpSum s;
    add_into(s, Rational(0), v);
    return s;
  };
  switch (e.kind()) {
    case K::kNumber: return constant(e.value());
    case K::kVarX: return constant(x);
    case K::kVarA: return constant(a);
    case K::kE: return ExpSum{{Rational(1), Rational(1)}};
    case K::kExp: {
      auto f = bilinear_form(e.lhs());
      if (!f) throw Error(ErrorKind::kParse, "nonlinearity inside exp");
      return ExpSum{{point_value(*f, x, a), Rational(1)}};
    }
    case K::kSign: {
      auto s = exact_sum(e.lhs(), x, a);
      if (!s) return std::nullopt;
      return constant(Rational(sum_sign(*s)));
    }
    case K::kNeg: {
      auto s = exact_sum(e.lhs(), x, a);
      if (!s) return std::nullopt;
      for (auto& [r, c] : *s) c = -c;
      return s;
    }
    case K::kAdd:
    case K::kSub: {
      auto l = exact_sum(e.lhs(), x, a);
      auto r = exact_sum(e.rhs(), x, a);
      if (!l || !r) return std::nullopt;
      for (const auto& [k, c] : *r) add_into(*l, k, e.kind() == K::kAdd ? c : -c);
      return l;
    }
    case K::kMul: {
      auto l = exact_sum(e.lhs(), x, a);
      auto r = exact_sum(e.rhs(), x, a);
      if (!l || !r) return std::nullopt;
      return product(*l, *r);
    }
    case K::kDiv: {
      auto l = exact_sum(e.lhs(), x, a);
      auto r = exact_sum(e.rhs(), x, a);
      if (!l || !r) return std::nullopt;
      if (r->empty()) throw Error(ErrorKind::kDegenerateInput, "division by zero");
      if (r->size() != 1) return std::nullopt;
      const auto& [k, c] = *r->begin();
      return product(*l, ExpSum{{-k, c.reciprocal()}});
    }
    case K::kPow: {
      auto b = exact_sum(e.lhs(), x, a);
      if (!b) return std::nullopt;
      long n = e.exponent();
      if (n < 0) {
        if (b->empty()) throw Error(ErrorKind::kDegenerateInput, "division by zero");
        if (b->size() != 1) return std::nullopt;
        const auto& [k, c] = *b->begin();
        return ExpSum{{k * Rational(n), c.pow(n)}};
      }
      ExpSum acc = constant(Rational(1));
      for (long i = 0; i < n; ++i) acc = product(acc, *b);
      return acc;
    }
  }
  return std::nullopt;
}

// Interval evaluation with every exp leaf enclosed to width < delta.
RationalInterval interval_eval(const Expr& e, const Rational& x, const Rational& a, const Rational& delta) {
  switch (e.kind()) {
    case K::kNumber: return RationalInterval(e.value());
    case K::kVarX: return RationalInterval(x);
    case K::kVarA: return RationalInterval(a);
    case K::kE: return enclose_exp(Rational(1), delta);
    case K::kExp: {
      auto f = bilinear_form(e.lhs());
      if (!f) throw Error(ErrorKind::kParse, "nonlinearity inside exp");
      return enclose_exp(point_value(*f, x, a), delta);
    }
    case K::kSign: {
      const int s = interval_eval(e.lhs(), x, a, delta).certified_sign();
      if (s == kStraddlesZero) throw Error(ErrorKind::kIndeterminate, "sign argument straddles zero");
      return RationalInterval(Rational(s));
    }
    case K::kNeg: return -interval_eval(e.lhs(), x, a, delta);
    case K::kAdd: return interval_eval(e.lhs(), x, a, delta) + interval_eval(e.rhs(), x, a, delta);
    case K::kSub: return interval_eval(e.lhs(), x, a, delta) - interval_eval(e.rhs(), x, a, delta);
    case K::kMul: return interval_eval(e.lhs(), x, a, delta) * interval_eval(e.rhs(), x, a, delta);
    case K::kDiv: return interval_eval(e.lhs(), x, a, delta) / interval_eval(e.rhs(), x, a, delta);
    case K::kPow: return interval_eval(e.lhs(), x, a, delta).pow(e.exponent());
  }
  throw Error(ErrorKind::kUnsupported, "unknown node");
}

bool satisfied(Comparator cmp, int sign) {
  switch (cmp) {
    case Comparator::kGreater: return sign > 0;
    case Comparator::kGreaterEq: return sign >= 0;
    case Comparator::kLess: return sign < 0;
    case Comparator::kLessEq: return sign <= 0;
  }
  return false;
}

json points_json(const std::vector<GridPoint>& ps) {
  json arr = json::array();
  for (const auto& p : ps) arr.push_back({p.x.str(), p.a.str()});
  return arr;
}

}  // namespace

RationalInterval enclose_at(const Expr& e, const Rational& x, const Rational& a, const Rational& eps) {
  if (auto s = exact_sum(e, x, a)) return enclose_sum(*s, eps);
  return refine_until(eps, [&](const Rational& delta) { return interval_eval(e, x, a, delta); });
}

GridRange parse_grid_range(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  GridRange r;
  if (!s.empty() && (s.front() == '(' || s.front() == '[')) {
    r.lo_open = s.front() == '(';
    s.remove_prefix(1);
    if (s.empty() || (s.back() != ')' && s.back() != ']')) throw Error(ErrorKind::kParse, "unbalanced range '" + std::string(text) + "'");
    r.hi_open = s.back() == ')';
    s.remove_suffix(1);
  }
  const auto comma = s.find(',');
  if (comma == std::string_view::npos) throw Error(ErrorKind::kParse, "range needs 'lo,hi': '" + std::string(text) + "'");
  r.lo = Rational::parse(s.substr(0, comma));
  r.hi = Rational::parse(s.substr(comma + 1));
  if (!(r.lo < r.hi)) throw Error(ErrorKind::kParse, "range needs lo < hi");
  return r;
}

std::vector<Rational> grid_points(const GridRange& r, unsigned steps) {
  if (steps < 2) throw Error(ErrorKind::kPrecondition, "steps must be at least 2");
  // Index offset and divisor so that open ends are skipped.
  const long n = steps;
  long first = r.lo_open ? 1 : 0;
  long div = n - 1 + (r.lo_open ? 1 : 0) + (r.hi_open ? 1 : 0);
  std::vector<Rational> out;
  const Rational w = r.hi - r.lo;
  for (long i = 0; i < n; ++i) out.push_back(r.lo + w * Rational(first + i) / Rational(div));
  return out;
}

PointVerdict check_point(const Inequality& ineq, const Rational& x, const Rational& a, const Rational& eps) {
  const Expr diff = Expr::binary(K::kSub, ineq.left, ineq.right);
  try {
    if (auto s = exact_sum(diff, x, a)) {
      if (s->empty()) return satisfied(ineq.cmp, 0) ? PointVerdict::kHolds : PointVerdict::kFails;
      Rational w = Rational(1) / Rational(2).pow(16);
      while (true) {
        if (w < eps) w = eps;
        const int sign = enclose_sum(*s, w).certified_sign();
        if (sign != kStraddlesZero) return satisfied(ineq.cmp, sign) ? PointVerdict::kHolds : PointVerdict::kFails;
        if (w == eps) return PointVerdict::kUndecided;
        w = w * w;
      }
    }
    Rational w = Rational(1) / Rational(2).pow(16);
    while (true) {
      if (w < eps) w = eps;
      const int sign =
          refine_until(w, [&](const Rational& delta) { return interval_eval(diff, x, a, delta); }).certified_sign();
      if (sign != kStraddlesZero) return satisfied(ineq.cmp, sign) ? PointVerdict::kHolds : PointVerdict::kFails;
      if (w == eps) return PointVerdict::kUndecided;
      w = w * w;
    }
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::kIndeterminate || e.kind() == ErrorKind::kBudgetExceeded) {
      return PointVerdict::kUndecided;
    }
    throw;
  }
}

GridReport grid_check(const Inequality& ineq, const GridRange& x_range, const GridRange& a_range, unsigned x_steps,
                      unsigned a_steps, const Rational& eps) {
  GridReport report;
  const auto xs = grid_points(x_range, x_steps);
  const auto as = grid_points(a_range, a_steps);
  for (const auto& a : as) {
    for (const auto& x : xs) {
      switch (check_point(ineq, x, a, eps)) {
        case PointVerdict::kHolds: report.holds_at.push_back({x, a}); break;
        case PointVerdict::kFails: report.fails_at.push_back({x, a}); break;
        case PointVerdict::kUndecided: report.undecided_at.push_back({x, a}); break;
      }
    }
  }
  return report;
}

std::string grid_report_to_json(const GridReport& r, int indent) {
  json j;
  j["total"] = r.total();
  j["holds_at"] = points_json(r.holds_at);
  j["fails_at"] = points_json(r.fails_at);
  j["undecided_at"] = points_json(r.undecided_at);
  return j.dump(indent);
}

}  // namespace mepprove
