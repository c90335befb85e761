#include "mepprove/prover.hpp"

#include <algorithm>

#include "mepprove/error.hpp"

namespace mepprove {

std::string_view to_string(BoundMode mode) { return mode == BoundMode::kGrouped ? "grouped" : "per-term"; }

BoundMode parse_bound_mode(std::string_view text) {
  if (text == "per-term") return BoundMode::kPerTerm;
  if (text == "grouped") return BoundMode::kGrouped;
  throw Error(ErrorKind::kParse, "unknown bound mode '" + std::string(text) + "'");
}

namespace {

void check_interval(const Rational& a, const Rational& b) {
  if (a.sign() < 0 || !(a < b)) throw Error(ErrorKind::kPrecondition, "need 0 <= a < b");
}

BoundUnit term_unit(const Rational& alpha, unsigned p, long q) {
  BoundUnit u;
  u.kind = BoundUnit::Kind::kTerm;
  u.q = q;
  u.p = p;
  u.coeff = Polynomial::monomial(alpha, p);
  u.sign = alpha.sign() > 0 ? CoeffSign::kPositive : CoeffSign::kNegative;
  return u;
}

}  // namespace

std::vector<BoundUnit> bounding_units(const Mep& f, const Rational& a, const Rational& b, BoundMode mode) {
  if (!f.is_normalized()) throw Error(ErrorKind::kPrecondition, "MEP must be normalized (all q >= 0)");
  check_interval(a, b);
  std::vector<BoundUnit> units;
  for (const auto& [q, c] : f.group_by_q()) {
    if (q == 0) continue;
    const auto coeffs = c.coefficients();
    const auto nonzero = std::count_if(coeffs.begin(), coeffs.end(), [](const Rational& r) { return !r.is_zero(); });
    if (mode == BoundMode::kGrouped && nonzero > 1) {
      std::optional<CoeffSign> sign;
      if (is_positive_on(c, a, b)) {
        sign = CoeffSign::kPositive;
      } else if (is_positive_on(-c, a, b)) {
        sign = CoeffSign::kNegative;
      }
      if (sign) {
        BoundUnit u;
        u.kind = BoundUnit::Kind::kGroup;
        u.q = q;
        u.coeff = c;
        u.sign = *sign;
        units.push_back(std::move(u));
        continue;
      }
    }
    for (std::size_t p = 0; p < coeffs.size(); ++p) {
      if (!coeffs[p].is_zero()) units.push_back(term_unit(coeffs[p], static_cast<unsigned>(p), q));
    }
  }
  return units;
}

DegreeAssignment uniform_assignment(std::span<const BoundUnit> units, unsigned l) {
  DegreeAssignment out;
  for (std::size_t i = 0; i < units.size(); ++i) out.entries.push_back({i, l, select_order(units[i].sign, l)});
  return out;
}

DegreeAssignment assignment_from_orders(std::span<const BoundUnit> units, std::span<const unsigned> orders) {
  if (orders.size() != units.size()) {
    throw Error(ErrorKind::kPrecondition, "expected " + std::to_string(units.size()) + " orders");
  }
  DegreeAssignment out;
  for (std::size_t i = 0; i < units.size(); ++i) {
    const unsigned theta = orders[i];
    const bool odd = theta % 2 == 1;
    if (odd != (units[i].sign == CoeffSign::kPositive) || theta == 0) {
      throw Error(ErrorKind::kPrecondition, "order " + std::to_string(theta) + " has the wrong parity for unit " +
                                                std::to_string(i));
    }
    out.entries.push_back({i, odd ? (theta + 1) / 2 : theta / 2, theta});
  }
  return out;
}

Polynomial lower_bound_poly(const Mep& f, std::span<const BoundUnit> units, const DegreeAssignment& assignment) {
  if (assignment.entries.size() != units.size()) throw Error(ErrorKind::kPrecondition, "assignment/unit count mismatch");
  Polynomial p;
  for (const auto& [q, c] : f.group_by_q()) {
    if (q == 0) p += c;
  }
  for (const auto& e : assignment.entries) {
    if (e.unit >= units.size()) throw Error(ErrorKind::kPrecondition, "assignment refers to a missing unit");
    const BoundUnit& u = units[e.unit];
    if (e.theta != select_order(u.sign, e.l)) throw Error(ErrorKind::kPrecondition, "order does not match l and sign");
    p += u.coeff * maclaurin(e.theta, Rational(u.q)).poly;
  }
  return p;
}

Polynomial lower_bound_poly(const Mep& f, const Rational& a, const Rational& b, const DegreeAssignment& assignment,
                            BoundMode mode) {
  const auto units = bounding_units(f, a, b, mode);
  return lower_bound_poly(f, units, assignment);
}

namespace {

std::optional<Certificate> certify(const Mep& f, const Rational& a, const Rational& b, BoundMode mode,
                                   std::span<const BoundUnit> units, const DegreeAssignment& assignment,
                                   int* root_count, Polynomial* poly_out) {
  Polynomial p = lower_bound_poly(f, units, assignment);
  if (poly_out) *poly_out = p;
  if (p.is_zero()) {
    if (root_count) *root_count = -1;
    return std::nullopt;
  }
  const SturmCounts counts = sturm_counts(p, a, b);
  if (root_count) *root_count = counts.roots();
  if (counts.roots() != 0) return std::nullopt;
  const Rational mid = (a + b) / 2;
  Rational value = p.eval(mid);
  if (value.sign() <= 0) return std::nullopt;
  Certificate c;
  c.input = f.str() + " > 0";
  c.a = a;
  c.b = b;
  c.mode = mode;
  c.assignment = assignment;
  c.poly = std::move(p);
  c.sturm = counts;
  c.witness_x = mid;
  c.witness_value = std::move(value);
  return c;
}

}  // namespace

std::optional<Certificate> certify_assignment(const Mep& f, const Rational& a, const Rational& b, BoundMode mode,
                                              const DegreeAssignment& assignment) {
  if (f.is_zero()) throw Error(ErrorKind::kDegenerateInput, "f is identically zero");
  const auto units = bounding_units(f, a, b, mode);
  return certify(f, a, b, mode, units, assignment, nullptr, nullptr);
}

ProveResult prove_positive(const Mep& f, const Rational& a, const Rational& b, const ProveOptions& options) {
  if (f.is_zero()) throw Error(ErrorKind::kDegenerateInput, "f is identically zero");
  if (options.max_l == 0) throw Error(ErrorKind::kPrecondition, "max_l must be at least 1");
  const auto units = bounding_units(f, a, b, options.mode);
  ProveResult result;
  for (unsigned l = 1; l <= options.max_l; ++l) {
    ++result.levels_tried;
    result.certificate = certify(f, a, b, options.mode, units, uniform_assignment(units, l),
                                 &result.last_root_count, &result.last_poly);
    if (result.certificate || units.empty()) break;
  }
  return result;
}

Certificate minimize_assignment(const Mep& f, const Certificate& seed) {
  const auto units = bounding_units(f, seed.a, seed.b, seed.mode);
  Certificate best = seed;
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < best.assignment.entries.size(); ++i) {
      while (best.assignment.entries[i].l > 1) {
        DegreeAssignment trial = best.assignment;
        auto& e = trial.entries[i];
        --e.l;
        e.theta = select_order(units.at(e.unit).sign, e.l);
        auto cert = certify(f, seed.a, seed.b, seed.mode, units, trial, nullptr, nullptr);
        if (!cert) break;
        cert->source = seed.source;
        best = std::move(*cert);
        changed = true;
      }
    }
  }
  return best;
}

std::optional<Witness> falsify(const Mep& f, const Rational& a, const Rational& b, unsigned samples,
                               const Rational& eps) {
  if (!(a < b)) throw Error(ErrorKind::kPrecondition, "need a < b");
  if (f.is_zero()) throw Error(ErrorKind::kDegenerateInput, "f is identically zero");
  const Rational step = (b - a) / Rational(samples + 1);
  for (unsigned i = 1; i <= samples; ++i) {
    const Rational x = a + step * Rational(i);
    RationalInterval v = eval_enclosure(f, x, eps);
    if (v.is_negative()) return Witness{x, std::move(v)};
  }
  return std::nullopt;
}

}  // namespace mepprove
