#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mepprove/mep.hpp"
#include "mepprove/sturm.hpp"
#include "mepprove/taylor.hpp"

namespace mepprove {

/// kPerTerm bounds every exponential term on its own; kGrouped bounds each
/// sign-definite q-group c_q(x) y^q once and falls back to per-term for the
/// rest.
enum class BoundMode { kPerTerm, kGrouped };

std::string_view to_string(BoundMode mode);
BoundMode parse_bound_mode(std::string_view text);

/// A piece of f replaced by a Taylor bound: coeff(x) * y^q with q >= 1.
struct BoundUnit {
  enum class Kind { kTerm, kGroup };
  Kind kind = Kind::kTerm;
  long q = 1;
  unsigned p = 0;  // x-power for a single term
  Polynomial coeff;
  CoeffSign sign = CoeffSign::kPositive;
};

/// Units in canonical (q, p) order; the q = 0 part is never a unit.
std::vector<BoundUnit> bounding_units(const Mep& f, const Rational& a, const Rational& b, BoundMode mode);

struct AssignmentEntry {
  std::size_t unit = 0;
  unsigned l = 1;
  unsigned theta = 1;
  friend bool operator==(const AssignmentEntry&, const AssignmentEntry&) = default;
};

/// Taylor order per bounding unit; theta is odd for positive and even for
/// negative coefficients.
struct DegreeAssignment {
  std::vector<AssignmentEntry> entries;
  friend bool operator==(const DegreeAssignment&, const DegreeAssignment&) = default;
};

DegreeAssignment uniform_assignment(std::span<const BoundUnit> units, unsigned l);
/// From explicit orders, one per unit; throws when an order has the wrong parity.
DegreeAssignment assignment_from_orders(std::span<const BoundUnit> units, std::span<const unsigned> orders);

/// P(x) = c_0(x) + sum over units of coeff(x) * T_theta(q x); f > P on (a, b)
/// for a >= 0 whenever some unit is present.
Polynomial lower_bound_poly(const Mep& f, std::span<const BoundUnit> units, const DegreeAssignment& assignment);
Polynomial lower_bound_poly(const Mep& f, const Rational& a, const Rational& b,
                            const DegreeAssignment& assignment, BoundMode mode);

struct Certificate {
  std::string input;  // canonical "<mep> > 0"
  Rational a;
  Rational b;
  BoundMode mode = BoundMode::kPerTerm;
  DegreeAssignment assignment;
  Polynomial poly;
  SturmCounts sturm;
  Rational witness_x;
  Rational witness_value;
  std::string source;  // optional original user text; not checked
};

std::string certificate_to_json(const Certificate& c, int indent = 2);
/// Throws kMalformedCertificate on schema violations.
Certificate certificate_from_json(std::string_view text);

struct ProveOptions {
  unsigned max_l = 20;
  BoundMode mode = BoundMode::kPerTerm;
};

struct ProveResult {
  std::optional<Certificate> certificate;
  unsigned levels_tried = 0;
  int last_root_count = 0;  // roots of the last failing P in (a, b); -1 when P was 0
  Polynomial last_poly;
  bool proven() const { return certificate.has_value(); }
};

/// Certificate for the given assignment when its P is positive on (a, b).
std::optional<Certificate> certify_assignment(const Mep& f, const Rational& a, const Rational& b,
                                              BoundMode mode, const DegreeAssignment& assignment);

/// Uniform deepening l = 1 .. max_l; the first positive P wins.
ProveResult prove_positive(const Mep& f, const Rational& a, const Rational& b, const ProveOptions& options = {});

/// Greedy descent on each unit's l, in unit order, until no decrement keeps
/// the proof valid.
Certificate minimize_assignment(const Mep& f, const Certificate& seed);

struct VerifyReport {
  bool ok = false;
  std::string mismatch;  // empty when ok
};

VerifyReport check_certificate(const Certificate& c);
bool verify_certificate(const Certificate& c);

struct Witness {
  Rational x;
  RationalInterval value;
};

/// First of `samples` equally spaced interior points with a certified
/// negative enclosure.
std::optional<Witness> falsify(const Mep& f, const Rational& a, const Rational& b, unsigned samples,
                               const Rational& eps);

}  // namespace mepprove
