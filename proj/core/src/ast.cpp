#include "mepprove/ast.hpp"

#include <vector>

#include "mepprove/error.hpp"

namespace mepprove {

struct Expr::Node {
  Kind kind;
  Rational value;
  long exponent = 0;
  std::vector<Expr> children;
};

Expr Expr::make(Kind k, std::vector<Expr> children, long exponent) {
  return Expr(std::make_shared<const Node>(Node{k, Rational(0), exponent, std::move(children)}));
}

Expr Expr::number(const Rational& v) {
  if (v.sign() < 0) return neg(number(-v));
  return Expr(std::make_shared<const Node>(Node{Kind::kNumber, v, 0, {}}));
}
Expr Expr::var_x() { return make(Kind::kVarX); }
Expr Expr::var_a() { return make(Kind::kVarA); }
Expr Expr::e() { return make(Kind::kE); }
Expr Expr::exp(const Expr& arg) { return make(Kind::kExp, {arg}); }
Expr Expr::sign(const Expr& arg) { return make(Kind::kSign, {arg}); }
Expr Expr::binary(Kind op, const Expr& lhs, const Expr& rhs) {
  if (op != Kind::kAdd && op != Kind::kSub && op != Kind::kMul && op != Kind::kDiv) {
    throw Error(ErrorKind::kPrecondition, "not a binary operator");
  }
  return make(op, {lhs, rhs});
}
Expr Expr::neg(const Expr& arg) { return make(Kind::kNeg, {arg}); }
Expr Expr::pow(const Expr& base, long exponent) { return make(Kind::kPow, {base}, exponent); }

Expr::Kind Expr::kind() const { return node_->kind; }
const Rational& Expr::value() const { return node_->value; }
long Expr::exponent() const { return node_->exponent; }

const Expr& Expr::lhs() const {
  if (node_->children.empty()) throw Error(ErrorKind::kPrecondition, "node has no operand");
  return node_->children[0];
}

const Expr& Expr::rhs() const {
  if (node_->children.size() < 2) throw Error(ErrorKind::kPrecondition, "node has no right operand");
  return node_->children[1];
}

bool Expr::mentions_x() const {
  if (node_->kind == Kind::kVarX) return true;
  for (const auto& c : node_->children) {
    if (c.mentions_x()) return true;
  }
  return false;
}

bool Expr::mentions_a() const {
  if (node_->kind == Kind::kVarA) return true;
  for (const auto& c : node_->children) {
    if (c.mentions_a()) return true;
  }
  return false;
}

bool operator==(const Expr& a, const Expr& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Expr::Kind::kNumber: return a.value() == b.value();
    case Expr::Kind::kVarX:
    case Expr::Kind::kVarA:
    case Expr::Kind::kE: return true;
    case Expr::Kind::kExp:
    case Expr::Kind::kSign:
    case Expr::Kind::kNeg: return a.lhs() == b.lhs();
    case Expr::Kind::kPow: return a.exponent() == b.exponent() && a.lhs() == b.lhs();
    default: return a.lhs() == b.lhs() && a.rhs() == b.rhs();
  }
}

namespace {

// Exact decimal text for rationals whose denominator is 2^i 5^j.
std::string number_text(const Rational& v) {
  if (v.is_integer()) return v.str();
  mpz_class den = v.denominator();
  unsigned digits = 0;
  mpz_class scale = 1;
  while (true) {
    mpz_class r;
    mpz_mod(r.get_mpz_t(), scale.get_mpz_t(), den.get_mpz_t());
    if (r == 0) break;
    scale *= 10;
    ++digits;
    if (digits > 4096) throw Error(ErrorKind::kUnsupported, "non-terminating literal " + v.str());
  }
  return v.to_decimal(static_cast<int>(digits));
}

int precedence(const Expr& e) {
  switch (e.kind()) {
    case Expr::Kind::kAdd:
    case Expr::Kind::kSub: return 1;
    case Expr::Kind::kMul:
    case Expr::Kind::kDiv: return 2;
    case Expr::Kind::kNeg: return 3;  // "-" factor
    case Expr::Kind::kPow: return 4;
    default: return 5;
  }
}

std::string at_least(const Expr& e, int prec) {
  std::string s = e.str();
  return precedence(e) < prec ? "(" + s + ")" : s;
}

}  // namespace

std::string Expr::str() const {
  switch (kind()) {
    case Kind::kNumber: return number_text(value());
    case Kind::kVarX: return "x";
    case Kind::kVarA: return "a";
    case Kind::kE: return "e";
    case Kind::kExp: return "exp(" + lhs().str() + ")";
    case Kind::kSign: return "sign(" + lhs().str() + ")";
    case Kind::kNeg: return "-" + at_least(lhs(), 3);
    case Kind::kPow: return at_least(lhs(), 5) + "^" + std::to_string(exponent());
    case Kind::kAdd: return at_least(lhs(), 1) + " + " + at_least(rhs(), 2);
    case Kind::kSub: return at_least(lhs(), 1) + " - " + at_least(rhs(), 2);
    case Kind::kMul: return at_least(lhs(), 2) + "*" + at_least(rhs(), 3);
    case Kind::kDiv: return at_least(lhs(), 2) + "/" + at_least(rhs(), 3);
  }
  return "?";
}

std::string_view to_string(Comparator c) {
  switch (c) {
    case Comparator::kGreater: return ">";
    case Comparator::kLess: return "<";
    case Comparator::kGreaterEq: return ">=";
    case Comparator::kLessEq: return "<=";
  }
  return "?";
}

Expr Inequality::oriented_difference() const {
  if (cmp == Comparator::kGreater || cmp == Comparator::kGreaterEq) return Expr::binary(Expr::Kind::kSub, left, right);
  return Expr::binary(Expr::Kind::kSub, right, left);
}

std::string Inequality::str() const { return left.str() + " " + std::string(to_string(cmp)) + " " + right.str(); }

}  // namespace mepprove
