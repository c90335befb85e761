#include "mepprove/stratify.hpp"

#include <algorithm>

#include <nlohmann/json.hpp>

#include "mepprove/error.hpp"

namespace mepprove {

using nlohmann::json;

std::string_view to_string(Monotone m) { return m == Monotone::kDecreasing ? "decreasing" : "increasing"; }

std::string_view to_string(Zone z) {
  switch (z) {
    case Zone::kPositive: return "positive";
    case Zone::kCrossing: return "crossing";
    case Zone::kNegative: return "negative";
  }
  return "?";
}

namespace {

bool is_constant(const Mep& m) { return m.is_polynomial() && m.as_polynomial().degree() <= 0; }

// Sign of m on (a, b): +1 or -1 with the certificate, or nullopt.
std::optional<std::pair<int, Certificate>> certified_sign(const Mep& m, const Rational& a, const Rational& b,
                                                          const ProveOptions& options) {
  for (int s : {1, -1}) {
    const Mep g = (s > 0 ? m : -m).normalized();
    ProveResult r = prove_positive(g, a, b, options);
    if (r.proven()) return std::make_pair(s, std::move(*r.certificate));
  }
  return std::nullopt;
}

RationalInterval abs_interval(const RationalInterval& v) {
  const Rational l = v.lo().abs();
  const Rational h = v.hi().abs();
  const Rational hi = std::max(l, h);
  if (v.contains_zero()) return {Rational(0), hi};
  return {std::min(l, h), hi};
}

EndpointTrend endpoint_trend(const ExpRational& f, const Rational& end, int inward, const ConstExpr& limit,
                             const Rational& width, const AnalyzeOptions& o) {
  EndpointTrend t;
  const RationalInterval lim = enclose_const(limit, o.eps);
  for (unsigned k = o.k_first; k <= o.k_last; ++k) {
    const Rational delta = width / Rational(2).pow(static_cast<long>(k));
    const Rational x = inward > 0 ? end + delta : end - delta;
    t.k.push_back(k);
    t.error.push_back(abs_interval(eval_enclosure(f, x, o.eps) - lim));
  }
  return t;
}

bool trend_ok(const EndpointTrend& t, const Rational& eps) {
  const Rational slack = eps * 4;
  for (std::size_t i = 1; i < t.error.size(); ++i) {
    if (t.error[i].lo() > t.error[i - 1].hi() + slack) return false;
  }
  const RationalInterval& first = t.error.front();
  const RationalInterval& last = t.error.back();
  if (first.hi() <= slack && last.hi() <= slack) return true;
  return last.hi() * 4 <= first.lo();
}

EnclosedConst enclosed(const ConstExpr& c, const Rational& eps) { return {c, enclose_const(c, eps)}; }

RationalInterval tighter(const ConstExpr& c, const Rational& eps, int round) {
  return enclose_const(c, eps / Rational(2).pow(64L * round));
}

json enclosed_json(const EnclosedConst& c) {
  return {{"expr", c.expr.simplified().str()},
          {"enclosure", {c.enclosure.lo().str(), c.enclosure.hi().str()}},
          {"decimal", c.enclosure.midpoint().to_decimal(12)}};
}

json trend_json(const EndpointTrend& t) {
  json arr = json::array();
  for (std::size_t i = 0; i < t.k.size(); ++i) {
    arr.push_back({{"k", t.k[i]}, {"error_hi", t.error[i].hi().to_decimal(40)}});
  }
  return arr;
}

}  // namespace

FamilyReport analyze_affine_family(const AffineFamily& fam, const AnalyzeOptions& o) {
  if (fam.a.sign() < 0 || !(fam.a < fam.b)) throw Error(ErrorKind::kPrecondition, "need 0 <= a < b");
  FamilyReport r;
  r.derivative = fam.f.normalized().differentiate().normalized().reduce_trivial_factors().normalized();
  const Mep& num = r.derivative.numerator();
  const Mep& den = r.derivative.denominator();
  if (num.is_zero()) throw Error(ErrorKind::kDegenerateInput, "f is constant; the family is not strictly monotone");

  if (is_constant(den)) {
    r.denominator_sign = den.as_polynomial().coefficient(0).sign();
  } else {
    auto s = certified_sign(den, fam.a, fam.b, o.prove);
    if (!s) throw Error(ErrorKind::kBudgetExceeded, "monotonicity-unproven: derivative denominator " + den.str());
    r.denominator_sign = s->first;
    r.denominator_certificate = std::move(s->second);
  }
  auto s = certified_sign(num, fam.a, fam.b, o.prove);
  if (!s) throw Error(ErrorKind::kBudgetExceeded, "monotonicity-unproven: derivative numerator " + num.str());
  r.numerator_sign = s->first;
  r.derivative_certificate = std::move(s->second);
  r.monotone = r.numerator_sign * r.denominator_sign < 0 ? Monotone::kDecreasing : Monotone::kIncreasing;

  const Rational width = fam.b - fam.a;
  r.trend_a = endpoint_trend(fam.f, fam.a, +1, fam.endpoint_a, width, o);
  r.trend_b = endpoint_trend(fam.f, fam.b, -1, fam.endpoint_b, width, o);
  if (!trend_ok(r.trend_a, o.eps)) throw Error(ErrorKind::kDegenerateInput, "endpoint-validation-failed at a");
  if (!trend_ok(r.trend_b, o.eps)) throw Error(ErrorKind::kDegenerateInput, "endpoint-validation-failed at b");

  const bool decreasing = r.monotone == Monotone::kDecreasing;
  const ConstExpr a_expr = decreasing ? fam.endpoint_b : fam.endpoint_a;
  const ConstExpr b_expr = decreasing ? fam.endpoint_a : fam.endpoint_b;
  r.A = enclosed(a_expr, o.eps);
  r.B = enclosed(b_expr, o.eps);
  const ConstExpr two = ConstExpr::literal(Rational(2));
  r.p0 = enclosed((a_expr + b_expr) / two, o.eps);
  r.d0 = enclosed((b_expr - a_expr) / two, o.eps);
  if (!(r.A.enclosure.hi() < r.B.enclosure.lo())) {
    throw Error(ErrorKind::kDegenerateInput, "endpoint-validation-failed: A and B enclosures are not disjoint");
  }
  return r;
}

Zone classify_zone(const FamilyReport& report, const Rational& p) {
  RationalInterval A = report.A.enclosure;
  RationalInterval B = report.B.enclosure;
  const Rational eps = std::max(A.width(), B.width()) + Rational::parse("1e-30");
  for (int round = 0; round < 8; ++round) {
    if (round > 0) {
      A = tighter(report.A.expr, eps, round);
      B = tighter(report.B.expr, eps, round);
    }
    if (p <= A.lo()) return Zone::kPositive;
    if (p >= B.hi()) return Zone::kNegative;
    if (A.hi() < p && p < B.lo()) return Zone::kCrossing;
  }
  throw Error(ErrorKind::kIndeterminate, "p = " + p.str() + " is not separated from an endpoint value");
}

RationalInterval isolate_crossing(const AffineFamily& fam, const FamilyReport& report, const Rational& p,
                                  const Rational& eps) {
  if (classify_zone(report, p) != Zone::kCrossing) {
    throw Error(ErrorKind::kPrecondition, "p must lie strictly between A and B");
  }
  const bool decreasing = report.monotone == Monotone::kDecreasing;
  Rational lo = fam.a;
  Rational hi = fam.b;
  while (!(hi - lo < eps)) {
    const Rational mid = (lo + hi) / 2;
    int sign = kStraddlesZero;
    Rational w = eps;
    for (int round = 0; round < 8 && sign == kStraddlesZero; ++round) {
      sign = (eval_enclosure(fam.f, mid, w) - RationalInterval(p)).certified_sign();
      w = w / Rational(2).pow(64);
    }
    if (sign == kStraddlesZero) {
      throw Error(ErrorKind::kIndeterminate, "sign of f - p undecided at x = " + mid.str());
    }
    if (sign == 0) return RationalInterval(mid);
    // f - p > 0 left of the crossing when f decreases.
    if ((sign > 0) == decreasing) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return {lo, hi};
}

std::string family_report_to_json(const FamilyReport& r, int indent) {
  json j;
  j["monotone"] = std::string(to_string(r.monotone));
  j["A"] = enclosed_json(r.A);
  j["B"] = enclosed_json(r.B);
  j["p0"] = enclosed_json(r.p0);
  j["d0"] = enclosed_json(r.d0);
  j["derivative"] = r.derivative.str();
  j["numerator_sign"] = r.numerator_sign;
  j["denominator_sign"] = r.denominator_sign;
  j["derivative_certificate"] = json::parse(certificate_to_json(r.derivative_certificate));
  if (r.denominator_certificate) {
    j["denominator_certificate"] = json::parse(certificate_to_json(*r.denominator_certificate));
  }
  j["endpoint_trend"] = {{"a", trend_json(r.trend_a)}, {"b", trend_json(r.trend_b)}};
  return j.dump(indent);
}

bool CascadeReport::passed() const {
  return std::all_of(steps.begin(), steps.end(), [](const CascadeStep& s) { return s.passed; });
}

CascadeReport cascade_check(const ParamExpFamily& fam, const Rational& a, const Rational& b,
                            std::span<const Rational> alpha_samples, const CascadeOptions& o) {
  if (a.sign() < 0 || !(a < b)) throw Error(ErrorKind::kPrecondition, "need 0 <= a < b");
  std::vector<ParamExpFamily> d{fam};
  for (unsigned j = 0; j < o.depth; ++j) d.push_back(d.back().derivative_alpha());
  const std::string on = " on (" + a.str() + ", " + b.str() + ")";

  CascadeReport report;
  for (unsigned j = 0; j < o.depth; ++j) {
    CascadeStep s;
    s.name = (j == 0 ? std::string("phi") : "d^" + std::to_string(j) + " phi/da^" + std::to_string(j)) +
             " at alpha = 0 is identically 0";
    const AlphaSlice slice = d[j].substitute_alpha(Rational(0));
    s.passed = slice.is_zero();
    s.detail = s.passed ? "0" : slice.str();
    report.steps.push_back(std::move(s));
  }

  const ParamExpFamily& top = d[o.depth];
  for (const Rational& alpha : alpha_samples) {
    CascadeStep s;
    s.name = "d^" + std::to_string(o.depth) + " phi/da^" + std::to_string(o.depth) + " > 0 at alpha = " +
             alpha.str() + on;
    const AlphaSlice slice = top.substitute_alpha(alpha);
    if (slice.is_zero()) {
      s.passed = true;
      s.detail = "identically 0";
    } else if (slice.exact()) {
      const RescaledMep m = slice_to_mep(slice.exact_terms(), a, b);
      const Mep g = m.mep.normalized();
      s.passed = prove_positive(g, m.a, m.b, o.prove).proven();
      s.detail = g.str() + (s.passed ? " > 0 proven" : " > 0 not proven") +
                 (m.v == Rational(1) ? std::string() : " (x = " + m.v.str() + " z)");
    } else {
      s.proof = false;
      s.passed = true;
      s.detail = slice.str() + " > 0 at " + std::to_string(o.evidence_points) + " interior points";
      for (unsigned i = 1; i <= o.evidence_points; ++i) {
        const Rational x = a + (b - a) * Rational(static_cast<long>(i)) / Rational(static_cast<long>(o.evidence_points + 1));
        int sign = kStraddlesZero;
        try {
          sign = slice.enclose(x, o.eps).certified_sign();
        } catch (const Error& e) {
          if (e.kind() != ErrorKind::kIndeterminate) throw;
        }
        if (sign != 1) {
          s.passed = false;
          s.detail = slice.str() + (sign == kStraddlesZero ? " undecided" : " not positive") +
                     " at x = " + x.str();
          break;
        }
      }
    }
    report.steps.push_back(std::move(s));
  }
  return report;
}

std::string cascade_report_to_json(const CascadeReport& r, int indent) {
  json steps = json::array();
  for (const auto& s : r.steps) {
    steps.push_back({{"name", s.name}, {"passed", s.passed}, {"kind", s.proof ? "proof" : "evidence"},
                     {"detail", s.detail}});
  }
  return json{{"passed", r.passed()}, {"steps", steps}}.dump(indent);
}

}  // namespace mepprove
