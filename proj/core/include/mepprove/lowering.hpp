#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "mepprove/ast.hpp"
#include "mepprove/const_expr.hpp"
#include "mepprove/mep.hpp"
#include "mepprove/prover.hpp"

namespace mepprove {

/// f(x) as a quotient of MEPs in z, where x = v z makes every exp rate an integer.
struct LoweredExpr {
  ExpRational f;
  Rational v{1};
};

/// Single-variable lowering. Throws kUnsupported for a, e, sign(.) or an
/// exp argument with a nonzero constant part.
LoweredExpr to_exp_rational(const Expr& e);

/// Goal "f > 0" on (a, b) in the rescaled variable, with the denominator
/// cleared only after its sign on the interval has been certified.
struct MepGoal {
  Mep f;
  Rational a;
  Rational b;
  Rational v{1};
  bool strict = true;
  ExpRational lowered;
  int denominator_sign = 1;
  std::optional<Certificate> denominator_certificate;
};

/// Throws kIndeterminate ("denominator-sign-unknown") when neither D > 0 nor
/// -D > 0 is proven on the interval.
MepGoal to_mep_goal(const Inequality& ineq, const Rational& a, const Rational& b, const ProveOptions& options = {});

/// An expression that lowers to a MEP with integer rates and no division.
Mep parse_mep(std::string_view text);

/// Variable-free expression as a ConstExpr; exp arguments must be rational.
ConstExpr to_const_expr(const Expr& e);

}  // namespace mepprove
