#include "mepprove/lowering.hpp"

#include "mepprove/error.hpp"
#include "mepprove/parser.hpp"

namespace mepprove {

namespace {

using K = Expr::Kind;

BilinearForm exp_form(const Expr& arg) {
  auto form = bilinear_form(arg);
  if (!form) throw Error(ErrorKind::kParse, "nonlinearity inside exp");
  return *form;
}

void collect_rate_denominators(const Expr& e, mpz_class& v) {
  switch (e.kind()) {
    case K::kExp: {
      const BilinearForm f = exp_form(e.lhs());
      v = lcm(v, f.cx.denominator());
      return;
    }
    case K::kNumber:
    case K::kVarX:
    case K::kVarA:
    case K::kE: return;
    case K::kAdd:
    case K::kSub:
    case K::kMul:
    case K::kDiv:
      collect_rate_denominators(e.lhs(), v);
      collect_rate_denominators(e.rhs(), v);
      return;
    default: collect_rate_denominators(e.lhs(), v); return;
  }
}

ExpRational lower(const Expr& e, const Rational& v) {
  switch (e.kind()) {
    case K::kNumber: return ExpRational(Mep::constant(e.value()));
    case K::kVarX: return ExpRational(Mep::monomial(v, 1, 0));
    case K::kVarA: throw Error(ErrorKind::kUnsupported, "variable a in a single-variable expression");
    case K::kE: throw Error(ErrorKind::kUnsupported, "irrational constant e in a MEP coefficient");
    case K::kSign: throw Error(ErrorKind::kUnsupported, "sign() is only available in pointwise evaluation");
    case K::kExp: {
      const BilinearForm f = exp_form(e.lhs());
      if (!f.ca.is_zero() || !f.cxa.is_zero()) {
        throw Error(ErrorKind::kUnsupported, "variable a in a single-variable expression");
      }
      if (!f.c0.is_zero()) throw Error(ErrorKind::kUnsupported, "exp argument with a constant part");
      const Rational q = -f.cx * v;
      if (!q.is_integer() || !q.numerator().fits_slong_p()) {
        throw Error(ErrorKind::kUnsupported, "exp rate out of range");
      }
      return ExpRational(Mep::monomial(Rational(1), 0, q.numerator().get_si()));
    }
    case K::kNeg: return ExpRational(Mep::constant(Rational(0))) - lower(e.lhs(), v);
    case K::kAdd: return lower(e.lhs(), v) + lower(e.rhs(), v);
    case K::kSub: return lower(e.lhs(), v) - lower(e.rhs(), v);
    case K::kMul: return lower(e.lhs(), v) * lower(e.rhs(), v);
    case K::kDiv: {
      ExpRational d = lower(e.rhs(), v);
      if (d.numerator().is_zero()) throw Error(ErrorKind::kDegenerateInput, "division by zero");
      return lower(e.lhs(), v) / d;
    }
    case K::kPow: {
      const ExpRational b = lower(e.lhs(), v);
      const long n = e.exponent();
      if (n < 0 && b.numerator().is_zero()) throw Error(ErrorKind::kDegenerateInput, "division by zero");
      ExpRational acc(Mep::constant(Rational(1)));
      for (long i = 0; i < (n < 0 ? -n : n); ++i) acc *= b;
      return n < 0 ? ExpRational(Mep::constant(Rational(1))) / acc : acc;
    }
  }
  throw Error(ErrorKind::kUnsupported, "unknown node");
}

}  // namespace

LoweredExpr to_exp_rational(const Expr& e) {
  mpz_class v = 1;
  collect_rate_denominators(e, v);
  const Rational vr{v};
  return LoweredExpr{lower(e, vr).normalized(), vr};
}

MepGoal to_mep_goal(const Inequality& ineq, const Rational& a, const Rational& b, const ProveOptions& options) {
  if (!(a < b)) throw Error(ErrorKind::kPrecondition, "need a < b");
  const LoweredExpr low = to_exp_rational(ineq.oriented_difference());
  MepGoal goal;
  goal.v = low.v;
  goal.a = a / low.v;
  goal.b = b / low.v;
  goal.strict = ineq.strict();
  goal.lowered = low.f.reduce_trivial_factors().normalized();
  const Mep& num = goal.lowered.numerator();
  const Mep& den = goal.lowered.denominator();
  if (den.is_polynomial() && den.as_polynomial().degree() == 0) {
    goal.f = num.scale(den.as_polynomial().coefficient(0).reciprocal()).normalized();
    return goal;
  }
  for (int s : {1, -1}) {
    const Mep d = s > 0 ? den : -den;
    ProveResult r = prove_positive(d.normalized(), goal.a, goal.b, options);
    if (r.proven()) {
      goal.denominator_sign = s;
      goal.denominator_certificate = std::move(r.certificate);
      goal.f = (s > 0 ? num : -num).normalized();
      return goal;
    }
  }
  throw Error(ErrorKind::kIndeterminate, "denominator-sign-unknown: " + den.str());
}

Mep parse_mep(std::string_view text) {
  const LoweredExpr low = to_exp_rational(parse_expression(text));
  if (low.v != Rational(1)) throw Error(ErrorKind::kUnsupported, "non-integer exp rate");
  const Mep& den = low.f.denominator();
  if (!den.is_polynomial() || den.as_polynomial().degree() != 0) {
    throw Error(ErrorKind::kUnsupported, "expression is not a MEP (has a denominator)");
  }
  return low.f.numerator().scale(den.as_polynomial().coefficient(0).reciprocal());
}

ConstExpr to_const_expr(const Expr& e) {
  switch (e.kind()) {
    case K::kNumber: return ConstExpr::literal(e.value());
    case K::kE: return ConstExpr::e();
    case K::kVarX:
    case K::kVarA: throw Error(ErrorKind::kUnsupported, "constant expression expected, found a variable");
    case K::kSign: throw Error(ErrorKind::kUnsupported, "sign() in a constant expression");
    case K::kExp: {
      const BilinearForm f = exp_form(e.lhs());
      if (!f.cx.is_zero() || !f.ca.is_zero() || !f.cxa.is_zero()) {
        throw Error(ErrorKind::kUnsupported, "constant expression expected, found a variable");
      }
      if (f.c0.is_integer() && f.c0.numerator() == 1) return ConstExpr::e();
      return ConstExpr::exp(f.c0);
    }
    case K::kNeg: return -to_const_expr(e.lhs());
    case K::kAdd: return to_const_expr(e.lhs()) + to_const_expr(e.rhs());
    case K::kSub: return to_const_expr(e.lhs()) - to_const_expr(e.rhs());
    case K::kMul: return to_const_expr(e.lhs()) * to_const_expr(e.rhs());
    case K::kDiv: return to_const_expr(e.lhs()) / to_const_expr(e.rhs());
    case K::kPow: return to_const_expr(e.lhs()).pow(e.exponent());
  }
  throw Error(ErrorKind::kUnsupported, "unknown node");
}

}  // namespace mepprove
