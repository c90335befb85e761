#include "mepprove/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "mepprove/const_expr.hpp"
#include "mepprove/error.hpp"
#include "mepprove/exp_enclosure.hpp"
#include "mepprove/grid.hpp"
#include "mepprove/lowering.hpp"
#include "mepprove/parser.hpp"
#include "mepprove/param_family.hpp"
#include "mepprove/prover.hpp"
#include "mepprove/stratify.hpp"
#include "mepprove/taylor.hpp"

namespace mepprove::cli {

namespace {

using nlohmann::json;

std::pair<Rational, Rational> parse_interval(const std::string& text) {
  const GridRange r = parse_grid_range(text);
  return {r.lo, r.hi};
}

std::vector<Rational> parse_list(const std::string& text) {
  std::vector<Rational> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(Rational::parse(item));
  if (out.empty()) throw Error(ErrorKind::kParse, "empty list");
  return out;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path);
  if (!f) throw Error(ErrorKind::kPrecondition, "cannot write " + path);
  f << content << "\n";
}

std::string read_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error(ErrorKind::kPrecondition, "cannot read " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

int exit_for(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::kIndeterminate:
    case ErrorKind::kBudgetExceeded: return kUndecided;
    default: return kInputError;
  }
}

std::string sturm_text(const SturmCounts& s) {
  return "V(a) = " + std::to_string(s.v_a) + ", V(b) = " + std::to_string(s.v_b) +
         ", endpoint adjustment = " + std::to_string(s.endpoint_adjust);
}

std::string orders_text(const DegreeAssignment& d) {
  std::string s;
  for (const auto& e : d.entries) s += (s.empty() ? "" : ", ") + std::to_string(e.theta);
  return "[" + s + "]";
}

struct ProveArgs {
  std::string ineq;
  std::string on;
  unsigned max_l = 20;
  bool minimize = false;
  bool grouped = false;
  std::string cert;
  unsigned samples = 64;
};

int cmd_prove(const ProveArgs& p, bool as_json, std::ostream& out) {
  const Inequality ineq = parse_inequality(p.ineq);
  const auto [a, b] = parse_interval(p.on);
  if (a.sign() < 0) throw Error(ErrorKind::kPrecondition, "interval must lie in [0, inf)");
  ProveOptions opts;
  opts.max_l = p.max_l;
  opts.mode = p.grouped ? BoundMode::kGrouped : BoundMode::kPerTerm;
  const MepGoal goal = to_mep_goal(ineq, a, b, opts);
  json j{{"input", ineq.str()}, {"interval", {a.str(), b.str()}}};
  auto emit = [&](const std::string& status, const std::string& human, int code) {
    j["status"] = status;
    if (as_json) {
      out << j.dump(2) << "\n";
    } else {
      out << human;
    }
    return code;
  };

  if (goal.f.is_zero()) {
    if (ineq.strict()) {
      const Rational mid = (a + b) / 2;
      j["witness"] = {{"x", mid.str()}, {"value", {"0", "0"}}};
      return emit("disproven", "disproven: both sides agree identically; witness x = " + mid.str() + "\n",
                  kDisproven);
    }
    return emit("proven", "proven: both sides agree identically\n", kProven);
  }

  ProveResult r = prove_positive(goal.f, goal.a, goal.b, opts);
  if (r.proven()) {
    Certificate cert = *r.certificate;
    if (p.minimize) cert = minimize_assignment(goal.f, cert);
    cert.source = ineq.str() + " on (" + a.str() + ", " + b.str() + ")";
    if (goal.v != Rational(1)) cert.source += " with x = " + goal.v.str() + "*z";
    if (!p.cert.empty()) write_file(p.cert, certificate_to_json(cert));
    j["certificate"] = json::parse(certificate_to_json(cert));
    if (goal.denominator_certificate) {
      j["denominator_certificate"] = json::parse(certificate_to_json(*goal.denominator_certificate));
    }
    std::string human = "proven: " + ineq.str() + " on (" + a.str() + ", " + b.str() + ")\n";
    human += "  mep:        " + cert.input + (goal.v != Rational(1) ? "  (x = " + goal.v.str() + "*z)" : "") + "\n";
    human += "  mode:       " + std::string(to_string(cert.mode)) + "\n";
    human += "  orders:     " + orders_text(cert.assignment) + "\n";
    human += "  deg P:      " + std::to_string(cert.poly.degree()) + "\n";
    human += "  sturm:      " + sturm_text(cert.sturm) + "\n";
    human += "  witness:    P(" + cert.witness_x.str() + ") = " + cert.witness_value.str() + "\n";
    if (!p.cert.empty()) human += "  certificate written to " + p.cert + "\n";
    return emit("proven", human, kProven);
  }

  if (auto w = falsify(goal.f, goal.a, goal.b, p.samples, Rational::parse("1e-30"))) {
    const Rational x = w->x * goal.v;
    j["witness"] = {{"x", x.str()}, {"value", {w->value.lo().str(), w->value.hi().str()}}};
    return emit("disproven",
                "disproven: the inequality fails at x = " + x.str() + "; the cleared MEP lies in [" +
                    w->value.lo().to_decimal(20) + ", " + w->value.hi().to_decimal(20) + "] there\n",
                kDisproven);
  }
  j["levels_tried"] = r.levels_tried;
  j["last_root_count"] = r.last_root_count;
  return emit("undecided",
              "undecided: no certificate up to l = " + std::to_string(r.levels_tried) +
                  "; last P has " + std::to_string(r.last_root_count) + " root(s) in the interval\n",
              kUndecided);
}

int cmd_verify(const std::string& path, bool as_json, std::ostream& out) {
  const Certificate c = certificate_from_json(read_file(path));
  const VerifyReport r = check_certificate(c);
  if (as_json) {
    out << json{{"ok", r.ok}, {"mismatch", r.mismatch}}.dump(2) << "\n";
  } else if (r.ok) {
    out << "verified: " << c.input << " on (" << c.a.str() << ", " << c.b.str() << ")\n";
  } else {
    out << "rejected: mismatch at " << r.mismatch << "\n";
  }
  return r.ok ? kProven : kDisproven;
}

struct FamilyArgs {
  std::string f;
  std::string on;
  std::string endpoint_a;
  std::string endpoint_b;
  std::string report;
  std::string p;
  unsigned max_l = 20;
};

int cmd_family(const FamilyArgs& fa, bool as_json, std::ostream& out) {
  const LoweredExpr low = to_exp_rational(parse_expression(fa.f));
  if (low.v != Rational(1)) throw Error(ErrorKind::kUnsupported, "family needs integer exp rates");
  const auto [a, b] = parse_interval(fa.on);
  AffineFamily fam{low.f, a, b, to_const_expr(parse_expression(fa.endpoint_a)),
                   to_const_expr(parse_expression(fa.endpoint_b))};
  AnalyzeOptions opts;
  opts.prove.max_l = fa.max_l;
  const FamilyReport r = analyze_affine_family(fam, opts);
  const std::string report = family_report_to_json(r);
  if (!fa.report.empty()) write_file(fa.report, report);
  json extra;
  if (!fa.p.empty()) {
    const Rational p = Rational::parse(fa.p);
    const Zone z = classify_zone(r, p);
    extra["zone"] = std::string(to_string(z));
    if (z == Zone::kCrossing) {
      const RationalInterval c = isolate_crossing(fam, r, p, Rational::parse("1e-20"));
      extra["crossing"] = {c.lo().str(), c.hi().str()};
    }
  }
  if (as_json) {
    json j = json::parse(report);
    if (!extra.is_null()) j["query"] = extra;
    out << j.dump(2) << "\n";
    return kProven;
  }
  auto line = [&](const char* name, const EnclosedConst& c) {
    out << "  " << name << " = " << c.expr.simplified().str() << " = " << c.enclosure.midpoint().to_decimal(12)
        << "...\n";
  };
  out << "family f(x) - p on (" << a.str() << ", " << b.str() << "): f is " << to_string(r.monotone) << "\n";
  out << "  f' = " << r.derivative.str() << "\n";
  out << "  derivative numerator sign " << (r.numerator_sign > 0 ? "+" : "-") << " certified: "
      << r.derivative_certificate.input << " (deg P " << r.derivative_certificate.poly.degree() << ")\n";
  line("A ", r.A);
  line("B ", r.B);
  line("p0", r.p0);
  line("d0", r.d0);
  if (!extra.is_null()) {
    out << "  p = " << fa.p << ": " << extra["zone"].get<std::string>();
    if (extra.contains("crossing")) {
      out << ", crossing in [" << Rational::parse(extra["crossing"][0].get<std::string>()).to_decimal(20) << ", "
          << Rational::parse(extra["crossing"][1].get<std::string>()).to_decimal(20) << "]";
    }
    out << "\n";
  }
  if (!fa.report.empty()) out << "  report written to " << fa.report << "\n";
  return kProven;
}

int cmd_eval(const std::string& text, const std::string& eps_text, bool as_json, std::ostream& out) {
  const ConstExpr c = to_const_expr(parse_expression(text));
  const Rational eps = Rational::parse(eps_text);
  if (eps.sign() <= 0) throw Error(ErrorKind::kPrecondition, "eps must be positive");
  const RationalInterval v = enclose_const(c, eps);
  const int digits = std::max<long>(1, -floor_log2(eps) * 30103 / 100000 + 2);
  if (as_json) {
    out << json{{"expr", c.simplified().str()},
                {"enclosure", {v.lo().str(), v.hi().str()}},
                {"decimal", v.midpoint().to_decimal(digits)}}
               .dump(2)
        << "\n";
  } else {
    out << c.simplified().str() << "\n  in [" << v.lo().to_decimal(digits) << ", " << v.hi().to_decimal(digits)
        << "]\n";
  }
  return kProven;
}

int cmd_taylor(unsigned order, const std::string& scale, bool as_json, std::ostream& out) {
  const Rational q = Rational::parse(scale);
  const TaylorBound t = maclaurin(order, q);
  const std::string side = t.side == BoundSide::kLower ? "lower" : "upper";
  if (as_json) {
    json coeffs = json::array();
    for (const auto& c : t.poly.coefficients()) coeffs.push_back(c.str());
    out << json{{"order", order}, {"scale", q.str()}, {"side", side}, {"poly", coeffs}}.dump(2) << "\n";
  } else {
    out << "T_" << order << "(" << (q == Rational(1) ? "" : q.str() + "*") << "x) = " << t.poly.str() << "\n";
    out << "  " << side << " bound for exp(-" << (q == Rational(1) ? "" : q.str() + "*") << "x) when "
        << (q == Rational(1) ? "" : q.str() + "*") << "x > 0\n";
  }
  return kProven;
}

struct GridArgs {
  std::string ineq;
  std::string x;
  std::string a;
  unsigned steps = 11;
  unsigned a_steps = 0;
  std::string eps = "1e-30";
  std::string report;
};

int cmd_grid(const GridArgs& g, bool as_json, std::ostream& out) {
  const Inequality ineq = parse_inequality(g.ineq);
  const GridReport r = grid_check(ineq, parse_grid_range(g.x), parse_grid_range(g.a), g.steps,
                                  g.a_steps ? g.a_steps : g.steps, Rational::parse(g.eps));
  const std::string report = grid_report_to_json(r);
  if (!g.report.empty()) write_file(g.report, report);
  if (as_json) {
    out << report << "\n";
  } else {
    out << "grid " << ineq.str() << "\n  points: " << r.total() << ", holds: " << r.holds_at.size()
        << ", fails: " << r.fails_at.size() << ", undecided: " << r.undecided_at.size() << "\n";
    for (const auto& p : r.fails_at) out << "  fails at x = " << p.x.str() << ", a = " << p.a.str() << "\n";
  }
  if (!r.fails_at.empty()) return kDisproven;
  if (!r.undecided_at.empty()) return kUndecided;
  return kProven;
}

struct CascadeArgs {
  std::string family;
  std::string on;
  std::string alphas = "1/2,1,2";
  unsigned depth = 2;
};

int cmd_cascade(const CascadeArgs& c, bool as_json, std::ostream& out) {
  const ParamExpFamily fam = ParamExpFamily::from_expr(parse_expression(c.family));
  const auto [a, b] = parse_interval(c.on);
  CascadeOptions opts;
  opts.depth = c.depth;
  const auto alphas = parse_list(c.alphas);
  const CascadeReport r = cascade_check(fam, a, b, alphas, opts);
  if (as_json) {
    out << cascade_report_to_json(r) << "\n";
  } else {
    out << "cascade for phi = " << fam.str() << "\n";
    for (const auto& s : r.steps) {
      out << "  [" << (s.passed ? "pass" : "FAIL") << ", " << (s.proof ? "proof" : "evidence") << "] " << s.name
          << ": " << s.detail << "\n";
    }
  }
  return r.passed() ? kProven : kUndecided;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Positivity proofs for mixed exponential polynomials", "mepprove"};
  app.require_subcommand(1);
  bool as_json = false;
  app.add_flag("--json", as_json, "Machine-readable output");

  ProveArgs pa;
  auto* prove = app.add_subcommand("prove", "Prove an inequality in x on an interval");
  prove->add_option("inequality", pa.ineq)->required();
  prove->add_option("--on", pa.on, "Interval a,b")->required();
  prove->add_option("--max-l", pa.max_l, "Deepest uniform level")->check(CLI::Range(1u, 200u));
  prove->add_flag("--minimize", pa.minimize, "Greedy per-term order reduction");
  prove->add_flag("--grouped", pa.grouped, "Bound sign-definite q-groups as units");
  prove->add_option("--cert", pa.cert, "Certificate output file");
  prove->add_option("--samples", pa.samples, "Falsification sample count")->check(CLI::Range(1u, 100000u));

  std::string verify_path;
  auto* verify = app.add_subcommand("verify", "Re-check a certificate");
  verify->add_option("file", verify_path)->required();

  FamilyArgs fa;
  auto* family = app.add_subcommand("family", "Analyse the family f(x) - p");
  family->add_option("f", fa.f)->required();
  family->add_option("--on", fa.on)->required();
  family->add_option("--endpoint-a", fa.endpoint_a, "Limit of f at a+")->required();
  family->add_option("--endpoint-b", fa.endpoint_b, "Limit of f at b-")->required();
  family->add_option("--report", fa.report, "Report output file");
  family->add_option("--p", fa.p, "Classify this parameter value and isolate its crossing");
  family->add_option("--max-l", fa.max_l)->check(CLI::Range(1u, 200u));

  std::string eval_text, eval_eps = "1e-20";
  auto* eval = app.add_subcommand("eval", "Enclose a constant expression");
  eval->add_option("expr", eval_text)->required();
  eval->add_option("--eps", eval_eps);

  unsigned order = 1;
  std::string scale = "1";
  auto* taylor = app.add_subcommand("taylor", "Print a Maclaurin bound of exp(-q x)");
  taylor->add_option("--order", order)->required()->check(CLI::Range(0u, 400u));
  taylor->add_option("--scale", scale);

  GridArgs ga;
  auto* grid = app.add_subcommand("grid", "Check an inequality in x and a on a grid");
  grid->add_option("inequality", ga.ineq)->required();
  grid->add_option("--x", ga.x)->required();
  grid->add_option("--a", ga.a)->required();
  grid->add_option("--steps", ga.steps)->check(CLI::Range(2u, 10000u));
  grid->add_option("--a-steps", ga.a_steps, "Points along a (default: --steps)")->check(CLI::Range(2u, 10000u));
  grid->add_option("--eps", ga.eps);
  grid->add_option("--report", ga.report);

  CascadeArgs ca;
  auto* cascade = app.add_subcommand("cascade", "Check the alpha-derivative cascade of a family in x and a");
  cascade->add_option("family", ca.family)->required();
  cascade->add_option("--on", ca.on)->required();
  cascade->add_option("--alpha", ca.alphas, "Comma-separated alpha samples");
  cascade->add_option("--depth", ca.depth)->check(CLI::Range(1u, 16u));

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kProven;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kInputError;
  }

  try {
    if (prove->parsed()) return cmd_prove(pa, as_json, out);
    if (verify->parsed()) return cmd_verify(verify_path, as_json, out);
    if (family->parsed()) return cmd_family(fa, as_json, out);
    if (eval->parsed()) return cmd_eval(eval_text, eval_eps, as_json, out);
    if (taylor->parsed()) return cmd_taylor(order, scale, as_json, out);
    if (grid->parsed()) return cmd_grid(ga, as_json, out);
    if (cascade->parsed()) return cmd_cascade(ca, as_json, out);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_for(e);
  }
  return kInputError;
}

}  // namespace mepprove::cli
