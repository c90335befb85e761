#include <nlohmann/json.hpp>

#include "mepprove/error.hpp"
#include "mepprove/lowering.hpp"
#include "mepprove/parser.hpp"
#include "mepprove/prover.hpp"

namespace mepprove {

using nlohmann::json;

namespace {

[[noreturn]] void malformed(const std::string& what) { throw Error(ErrorKind::kMalformedCertificate, what); }

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) malformed(std::string("missing field '") + key + "'");
  return j.at(key);
}

Rational rational_field(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_string()) malformed(std::string("field '") + key + "' must be a rational string");
  try {
    return Rational::parse(v.get<std::string>());
  } catch (const Error&) {
    malformed(std::string("field '") + key + "' is not a rational");
  }
}

int int_field(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_number_integer()) malformed(std::string("field '") + key + "' must be an integer");
  return v.get<int>();
}

}  // namespace

std::string certificate_to_json(const Certificate& c, int indent) {
  json j;
  j["input"] = c.input;
  j["interval"] = {c.a.str(), c.b.str()};
  j["mode"] = std::string(to_string(c.mode));
  json entries = json::array();
  for (const auto& e : c.assignment.entries) entries.push_back({{"term", e.unit}, {"l", e.l}, {"theta", e.theta}});
  j["assignment"] = entries;
  json coeffs = json::array();
  for (const auto& r : c.poly.coefficients()) coeffs.push_back(r.str());
  j["poly"] = coeffs;
  j["sturm"] = {{"v_a", c.sturm.v_a}, {"v_b", c.sturm.v_b}, {"endpoint_adjust", c.sturm.endpoint_adjust}};
  j["witness"] = {{"x", c.witness_x.str()}, {"value", c.witness_value.str()}};
  if (!c.source.empty()) j["source"] = c.source;
  return j.dump(indent);
}

Certificate certificate_from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    malformed(std::string("not JSON: ") + e.what());
  }
  Certificate c;
  const json& input = field(j, "input");
  if (!input.is_string()) malformed("field 'input' must be a string");
  c.input = input.get<std::string>();
  const json& interval = field(j, "interval");
  if (!interval.is_array() || interval.size() != 2) malformed("field 'interval' must be [a, b]");
  {
    json tmp = {{"a", interval[0]}, {"b", interval[1]}};
    c.a = rational_field(tmp, "a");
    c.b = rational_field(tmp, "b");
  }
  const json& mode = field(j, "mode");
  if (!mode.is_string()) malformed("field 'mode' must be a string");
  try {
    c.mode = parse_bound_mode(mode.get<std::string>());
  } catch (const Error&) {
    malformed("unknown mode");
  }
  const json& entries = field(j, "assignment");
  if (!entries.is_array()) malformed("field 'assignment' must be an array");
  for (const auto& e : entries) {
    const int unit = int_field(e, "term");
    const int l = int_field(e, "l");
    const int theta = int_field(e, "theta");
    if (unit < 0 || l < 1 || theta < 1) malformed("assignment entry out of range");
    c.assignment.entries.push_back(
        {static_cast<std::size_t>(unit), static_cast<unsigned>(l), static_cast<unsigned>(theta)});
  }
  const json& coeffs = field(j, "poly");
  if (!coeffs.is_array()) malformed("field 'poly' must be an array");
  std::vector<Rational> cs;
  for (const auto& v : coeffs) {
    json tmp = {{"c", v}};
    cs.push_back(rational_field(tmp, "c"));
  }
  c.poly = Polynomial(std::move(cs));
  const json& sturm = field(j, "sturm");
  c.sturm.v_a = int_field(sturm, "v_a");
  c.sturm.v_b = int_field(sturm, "v_b");
  c.sturm.endpoint_adjust = int_field(sturm, "endpoint_adjust");
  const json& w = field(j, "witness");
  c.witness_x = rational_field(w, "x");
  c.witness_value = rational_field(w, "value");
  if (j.contains("source") && j["source"].is_string()) c.source = j["source"].get<std::string>();
  return c;
}

VerifyReport check_certificate(const Certificate& c) {
  auto fail = [](std::string where) { return VerifyReport{false, std::move(where)}; };
  Mep f;
  try {
    const Inequality ineq = parse_inequality(c.input);
    if (ineq.cmp != Comparator::kGreater || !(ineq.right == Expr::number(Rational(0)))) {
      return fail("input: expected '<mep> > 0'");
    }
    const LoweredExpr low = to_exp_rational(ineq.left);
    if (low.v != Rational(1) || !low.f.denominator().is_polynomial() ||
        low.f.denominator().as_polynomial().degree() != 0) {
      return fail("input: not a MEP with integer rates");
    }
    f = low.f.numerator().scale(low.f.denominator().as_polynomial().coefficient(0).reciprocal());
  } catch (const Error& e) {
    return fail(std::string("input: ") + e.what());
  }
  if (!f.is_normalized()) return fail("input: negative exponential rate");
  if (f.is_zero()) return fail("input: identically zero");
  if (c.a.sign() < 0 || !(c.a < c.b)) return fail("interval");

  std::vector<BoundUnit> units;
  try {
    units = bounding_units(f, c.a, c.b, c.mode);
  } catch (const Error& e) {
    return fail(std::string("mode: ") + e.what());
  }
  if (c.assignment.entries.size() != units.size()) return fail("assignment: unit count");
  for (std::size_t i = 0; i < units.size(); ++i) {
    const auto& e = c.assignment.entries[i];
    const std::string at = "assignment[" + std::to_string(i) + "]";
    if (e.unit != i) return fail(at + ".unit");
    if (e.theta != select_order(units[i].sign, e.l)) return fail(at + ".theta");
  }

  const Polynomial p = lower_bound_poly(f, units, c.assignment);
  const auto want = p.coefficients();
  const auto got = c.poly.coefficients();
  for (std::size_t i = 0; i < std::max(want.size(), got.size()); ++i) {
    const Rational w = i < want.size() ? want[i] : Rational(0);
    const Rational g = i < got.size() ? got[i] : Rational(0);
    if (w != g) return fail("poly[" + std::to_string(i) + "]");
  }
  if (p.is_zero()) return fail("poly: zero");

  const SturmCounts s = sturm_counts(p, c.a, c.b);
  if (s.v_a != c.sturm.v_a || s.v_b != c.sturm.v_b) return fail("sturm.v_a/v_b");
  if (s.endpoint_adjust != c.sturm.endpoint_adjust) return fail("sturm.endpoint_adjust");
  if (s.roots() != 0) return fail("sturm: roots in interval");

  if (c.witness_x != (c.a + c.b) / 2) return fail("witness.x");
  if (p.eval(c.witness_x) != c.witness_value) return fail("witness.value");
  if (c.witness_value.sign() <= 0) return fail("witness.value: not positive");
  return VerifyReport{true, {}};
}

bool verify_certificate(const Certificate& c) { return check_certificate(c).ok; }

}  // namespace mepprove
