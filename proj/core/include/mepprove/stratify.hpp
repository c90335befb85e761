#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mepprove/const_expr.hpp"
#include "mepprove/mep.hpp"
#include "mepprove/param_family.hpp"
#include "mepprove/prover.hpp"

namespace mepprove {

/// phi_p(x) = f(x) - p on (a, b), with the one-sided limits of f supplied by the caller.
struct AffineFamily {
  ExpRational f;
  Rational a;
  Rational b;
  ConstExpr endpoint_a;  // f(a+)
  ConstExpr endpoint_b;  // f(b-)
};

enum class Monotone { kDecreasing, kIncreasing };
std::string_view to_string(Monotone m);

struct EnclosedConst {
  ConstExpr expr;
  RationalInterval enclosure;
};

/// |f(end +- delta_k) - limit| for delta_k = (b - a) 2^{-k}.
struct EndpointTrend {
  std::vector<unsigned> k;
  std::vector<RationalInterval> error;
};

struct FamilyReport {
  Monotone monotone = Monotone::kDecreasing;
  EnclosedConst A;
  EnclosedConst B;
  EnclosedConst p0;
  EnclosedConst d0;
  ExpRational derivative;  // after cancelling trivial common factors
  int numerator_sign = 1;
  int denominator_sign = 1;
  Certificate derivative_certificate;  // sign of the derivative numerator
  std::optional<Certificate> denominator_certificate;  // absent for a constant denominator
  EndpointTrend trend_a;
  EndpointTrend trend_b;
};

struct AnalyzeOptions {
  ProveOptions prove;
  Rational eps = Rational::parse("1e-30");
  unsigned k_first = 3;
  unsigned k_last = 12;
};

/// Throws kBudgetExceeded ("monotonicity-unproven") when the derivative sign
/// is not certified, and kDegenerateInput ("endpoint-validation-failed").
FamilyReport analyze_affine_family(const AffineFamily& fam, const AnalyzeOptions& options = {});

std::string family_report_to_json(const FamilyReport& r, int indent = 2);

/// The unique crossing of f = p, to width < eps. Requires A < p < B.
RationalInterval isolate_crossing(const AffineFamily& fam, const FamilyReport& report, const Rational& p,
                                  const Rational& eps);

/// Sign behaviour of f - p on (a, b).
enum class Zone { kPositive, kCrossing, kNegative };
std::string_view to_string(Zone z);
/// Throws kIndeterminate when p sits inside an endpoint enclosure.
Zone classify_zone(const FamilyReport& report, const Rational& p);

struct CascadeStep {
  std::string name;
  bool passed = false;
  bool proof = true;  // false: grid evidence only
  std::string detail;
};

struct CascadeReport {
  std::vector<CascadeStep> steps;
  bool passed() const;
};

struct CascadeOptions {
  unsigned depth = 2;
  ProveOptions prove;
  unsigned evidence_points = 64;
  Rational eps = Rational::parse("1e-30");
};

/// Exact: d^j/dalpha^j fam is identically zero at alpha = 0 for j < depth.
/// Per sample: d^depth/dalpha^depth fam > 0 on (a, b), proven when the
/// slice is exact, else checked on interior points.
CascadeReport cascade_check(const ParamExpFamily& fam, const Rational& a, const Rational& b,
                            std::span<const Rational> alpha_samples, const CascadeOptions& options = {});

std::string cascade_report_to_json(const CascadeReport& r, int indent = 2);

}  // namespace mepprove
