#include "mepprove/const_expr.hpp"

#include "mepprove/error.hpp"
#include "mepprove/exp_enclosure.hpp"

namespace mepprove {

struct ConstExpr::Node {
  Kind kind;
  Rational value;  // literal value, or exponent of kExp
  long power = 0;  // kPow
  std::shared_ptr<const Node> lhs;
  std::shared_ptr<const Node> rhs;
};

ConstExpr ConstExpr::literal(const Rational& value) {
  return ConstExpr(std::make_shared<const Node>(Node{Kind::kLiteral, value, 0, nullptr, nullptr}));
}

ConstExpr ConstExpr::e() { return ConstExpr(std::make_shared<const Node>(Node{Kind::kE, Rational(1), 0, nullptr, nullptr})); }

ConstExpr ConstExpr::exp(const Rational& r) {
  return ConstExpr(std::make_shared<const Node>(Node{Kind::kExp, r, 0, nullptr, nullptr}));
}

ConstExpr operator+(const ConstExpr& a, const ConstExpr& b) {
  return ConstExpr(std::make_shared<const ConstExpr::Node>(
      ConstExpr::Node{ConstExpr::Kind::kAdd, Rational(0), 0, a.node_, b.node_}));
}
ConstExpr operator-(const ConstExpr& a, const ConstExpr& b) {
  return ConstExpr(std::make_shared<const ConstExpr::Node>(
      ConstExpr::Node{ConstExpr::Kind::kSub, Rational(0), 0, a.node_, b.node_}));
}
ConstExpr operator*(const ConstExpr& a, const ConstExpr& b) {
  return ConstExpr(std::make_shared<const ConstExpr::Node>(
      ConstExpr::Node{ConstExpr::Kind::kMul, Rational(0), 0, a.node_, b.node_}));
}
ConstExpr operator/(const ConstExpr& a, const ConstExpr& b) {
  return ConstExpr(std::make_shared<const ConstExpr::Node>(
      ConstExpr::Node{ConstExpr::Kind::kDiv, Rational(0), 0, a.node_, b.node_}));
}
ConstExpr operator-(const ConstExpr& a) {
  return ConstExpr(std::make_shared<const ConstExpr::Node>(
      ConstExpr::Node{ConstExpr::Kind::kNeg, Rational(0), 0, a.node_, nullptr}));
}

ConstExpr ConstExpr::pow(long exponent) const {
  return ConstExpr(std::make_shared<const Node>(Node{Kind::kPow, Rational(0), exponent, node_, nullptr}));
}

ConstExpr::Kind ConstExpr::kind() const { return node_->kind; }

// Recursive helpers operate on nodes directly.
namespace detail {

template <class NodeT>
std::optional<Rational> exact(const NodeT& n) {
  using K = ConstExpr::Kind;
  switch (n.kind) {
    case K::kLiteral: return n.value;
    case K::kE: return std::nullopt;
    case K::kExp:
      if (n.value.is_zero()) return Rational(1);
      return std::nullopt;
    case K::kNeg: {
      auto v = exact(*n.lhs);
      if (!v) return std::nullopt;
      return -*v;
    }
    case K::kPow: {
      auto v = exact(*n.lhs);
      if (!v) return std::nullopt;
      if (v->is_zero() && n.power < 0) throw Error(ErrorKind::kIndeterminate, "zero to a negative power");
      return v->pow(n.power);
    }
    default: break;
  }
  auto a = exact(*n.lhs);
  auto b = exact(*n.rhs);
  if (!a || !b) return std::nullopt;
  switch (n.kind) {
    case K::kAdd: return *a + *b;
    case K::kSub: return *a - *b;
    case K::kMul: return *a * *b;
    case K::kDiv:
      if (b->is_zero()) throw Error(ErrorKind::kIndeterminate, "division by zero");
      return *a / *b;
    default: return std::nullopt;
  }
}

template <class NodeT>
RationalInterval eval(const NodeT& n, const Rational& delta) {
  using K = ConstExpr::Kind;
  switch (n.kind) {
    case K::kLiteral: return RationalInterval(n.value);
    case K::kE: return enclose_exp(Rational(1), delta);
    case K::kExp: return enclose_exp(n.value, delta);
    case K::kNeg: return -eval(*n.lhs, delta);
    case K::kPow: return eval(*n.lhs, delta).pow(n.power);
    case K::kAdd: return eval(*n.lhs, delta) + eval(*n.rhs, delta);
    case K::kSub: return eval(*n.lhs, delta) - eval(*n.rhs, delta);
    case K::kMul: return eval(*n.lhs, delta) * eval(*n.rhs, delta);
    case K::kDiv: return eval(*n.lhs, delta) / eval(*n.rhs, delta);
  }
  throw Error(ErrorKind::kUnsupported, "unknown constant expression node");
}

using RF = ConstExpr::RationalFunction;

RF canonical(Polynomial num, Polynomial den) {
  if (den.is_zero()) throw Error(ErrorKind::kIndeterminate, "symbolic division by zero");
  if (num.is_zero()) return {Polynomial{}, Polynomial::constant(Rational(1))};
  const Polynomial g = gcd(num, den);
  num = Polynomial::divmod(num, g).first;
  den = Polynomial::divmod(den, g).first;
  // common integer scaling: clear denominators, remove joint content
  mpz_class l = 1;
  for (const auto& c : num.coefficients()) l = lcm(l, c.denominator());
  for (const auto& c : den.coefficients()) l = lcm(l, c.denominator());
  num = num.scale(Rational(l));
  den = den.scale(Rational(l));
  mpz_class content = 0;
  for (const auto& c : num.coefficients()) mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), c.numerator().get_mpz_t());
  for (const auto& c : den.coefficients()) mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), c.numerator().get_mpz_t());
  Rational s(mpz_class(1), content);
  if (den.leading().sign() < 0) s = -s;
  return {num.scale(s), den.scale(s)};
}

template <class NodeT>
std::optional<RF> rational_function(const NodeT& n) {
  using K = ConstExpr::Kind;
  const Polynomial one = Polynomial::constant(Rational(1));
  switch (n.kind) {
    case K::kLiteral: return RF{Polynomial::constant(n.value), one};
    case K::kE: return RF{Polynomial::monomial(Rational(1), 1), one};
    case K::kExp: {
      if (!n.value.is_integer()) return std::nullopt;
      const long k = n.value.numerator().get_si();
      if (k >= 0) return RF{Polynomial::monomial(Rational(1), static_cast<unsigned>(k)), one};
      return RF{one, Polynomial::monomial(Rational(1), static_cast<unsigned>(-k))};
    }
    case K::kNeg: {
      auto a = rational_function(*n.lhs);
      if (!a) return std::nullopt;
      return RF{-a->num, a->den};
    }
    case K::kPow: {
      auto a = rational_function(*n.lhs);
      if (!a) return std::nullopt;
      Polynomial num = one, den = one;
      const long k = n.power < 0 ? -n.power : n.power;
      for (long i = 0; i < k; ++i) {
        num *= a->num;
        den *= a->den;
      }
      if (n.power < 0) std::swap(num, den);
      return canonical(std::move(num), std::move(den));
    }
    default: break;
  }
  auto a = rational_function(*n.lhs);
  auto b = rational_function(*n.rhs);
  if (!a || !b) return std::nullopt;
  switch (n.kind) {
    case K::kAdd: return canonical(a->num * b->den + b->num * a->den, a->den * b->den);
    case K::kSub: return canonical(a->num * b->den - b->num * a->den, a->den * b->den);
    case K::kMul: return canonical(a->num * b->num, a->den * b->den);
    case K::kDiv: return canonical(a->num * b->den, a->den * b->num);
    default: return std::nullopt;
  }
}

int precedence(ConstExpr::Kind k) {
  using K = ConstExpr::Kind;
  switch (k) {
    case K::kAdd:
    case K::kSub: return 1;
    case K::kMul:
    case K::kDiv: return 2;
    case K::kNeg: return 3;
    case K::kPow: return 4;
    default: return 5;
  }
}

template <class NodeT>
std::string print(const NodeT& n);

template <class NodeT>
std::string wrapped(const NodeT& child, int min_prec) {
  std::string s = print(child);
  int p = precedence(child.kind);
  if (child.kind == ConstExpr::Kind::kLiteral && (!child.value.is_integer() || child.value.sign() < 0)) p = 0;
  return p < min_prec ? "(" + s + ")" : s;
}

template <class NodeT>
std::string print(const NodeT& n) {
  using K = ConstExpr::Kind;
  switch (n.kind) {
    case K::kLiteral: return n.value.str();
    case K::kE: return "e";
    case K::kExp: return "exp(" + n.value.str() + ")";
    case K::kNeg:
      // -(c*t) and (-c)*t print alike
      if (n.lhs->kind == K::kMul || n.lhs->kind == K::kPow) return "-" + print(*n.lhs);
      return "-" + wrapped(*n.lhs, 3);
    case K::kPow: return wrapped(*n.lhs, 5) + "^" + (n.power < 0 ? "(" + std::to_string(n.power) + ")" : std::to_string(n.power));
    case K::kAdd: return wrapped(*n.lhs, 1) + " + " + wrapped(*n.rhs, 2);
    case K::kSub: return wrapped(*n.lhs, 1) + " - " + wrapped(*n.rhs, 2);
    case K::kMul: return wrapped(*n.lhs, 2) + "*" + wrapped(*n.rhs, 3);
    case K::kDiv: return wrapped(*n.lhs, 2) + "/" + wrapped(*n.rhs, 3);
  }
  return "?";
}

}  // namespace detail

std::optional<Rational> ConstExpr::exact_value() const { return detail::exact(*node_); }

RationalInterval ConstExpr::eval_at(const Rational& delta) const {
  if (auto v = exact_value()) return RationalInterval(*v);
  return detail::eval(*node_, delta);
}

std::optional<ConstExpr::RationalFunction> ConstExpr::as_rational_function() const {
  try {
    return detail::rational_function(*node_);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::kIndeterminate) return std::nullopt;
    throw;
  }
}

namespace {

ConstExpr from_polynomial_in_e(const Polynomial& p) {
  ConstExpr out = ConstExpr::literal(Rational(0));
  bool first = true;
  for (int i = p.degree(); i >= 0; --i) {
    const Rational c = p.coefficient(static_cast<std::size_t>(i));
    if (c.is_zero()) continue;
    ConstExpr mono = i == 0 ? ConstExpr::literal(c.abs())
                     : (i == 1 ? ConstExpr::e() : ConstExpr::e().pow(i));
    if (i > 0 && c.abs() != Rational(1)) mono = ConstExpr::literal(c.abs()) * mono;
    if (first) {
      out = c.sign() < 0 ? -mono : mono;
      first = false;
    } else {
      out = c.sign() < 0 ? out - mono : out + mono;
    }
  }
  return out;
}

}  // namespace

ConstExpr ConstExpr::simplified() const {
  auto rf = as_rational_function();
  if (!rf) return *this;
  ConstExpr num = from_polynomial_in_e(rf->num);
  if (rf->den == Polynomial::constant(Rational(1))) return num;
  return num / from_polynomial_in_e(rf->den);
}

std::string ConstExpr::str() const { return detail::print(*node_); }

bool symbolically_equal(const ConstExpr& a, const ConstExpr& b) {
  auto ra = a.as_rational_function();
  auto rb = b.as_rational_function();
  if (!ra || !rb) throw Error(ErrorKind::kUnsupported, "not a rational function of e");
  return ra->num * rb->den == rb->num * ra->den;
}

RationalInterval enclose_const(const ConstExpr& c, const Rational& eps) {
  if (eps.sign() <= 0) throw Error(ErrorKind::kPrecondition, "eps must be positive");
  try {
    if (auto v = c.exact_value()) return RationalInterval(*v);
    (void)detail::rational_function(*c.node_);  // throws on an identically zero divisor
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::kIndeterminate) {
      throw Error(ErrorKind::kIndeterminate, "division by possibly zero: " + c.str());
    }
    throw;
  }
  try {
    return refine_until(eps, [&](const Rational& delta) { return c.eval_at(delta); });
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::kIndeterminate) {
      throw Error(ErrorKind::kIndeterminate, "division by possibly zero: " + c.str());
    }
    throw;
  }
}

}  // namespace mepprove
