#include "mepprove/mep.hpp"

#include <algorithm>
#include <ostream>

#include "mepprove/error.hpp"
#include "mepprove/exp_enclosure.hpp"

namespace mepprove {

Mep::Mep(std::span<const MepTerm> terms) {
  for (const auto& t : terms) add_term(t.alpha, t.p, t.q);
}

void Mep::add_term(const Rational& alpha, unsigned p, long q) {
  if (alpha.is_zero()) return;
  auto key = std::make_pair(q, p);
  auto it = terms_.find(key);
  if (it == terms_.end()) {
    terms_.emplace(key, alpha);
    return;
  }
  it->second += alpha;
  if (it->second.is_zero()) terms_.erase(it);
}

Mep Mep::constant(const Rational& c) { return monomial(c, 0, 0); }

Mep Mep::monomial(const Rational& alpha, unsigned p, long q) {
  Mep m;
  m.add_term(alpha, p, q);
  return m;
}

Mep Mep::from_polynomial(const Polynomial& c, long q) {
  Mep m;
  const auto coeffs = c.coefficients();
  for (std::size_t i = 0; i < coeffs.size(); ++i) m.add_term(coeffs[i], static_cast<unsigned>(i), q);
  return m;
}

std::vector<MepTerm> Mep::terms() const {
  std::vector<MepTerm> out;
  out.reserve(terms_.size());
  for (const auto& [key, alpha] : terms_) out.push_back({alpha, key.second, key.first});
  return out;
}

bool Mep::is_polynomial() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const auto& kv) { return kv.first.first == 0; });
}

long Mep::min_q() const { return terms_.empty() ? 0 : terms_.begin()->first.first; }
long Mep::max_q() const { return terms_.empty() ? 0 : terms_.rbegin()->first.first; }

unsigned Mep::max_p() const {
  unsigned p = 0;
  for (const auto& kv : terms_) p = std::max(p, kv.first.second);
  return p;
}

Mep Mep::normalized() const {
  const long q = min_q();
  return q < 0 ? shift_q(-q) : *this;
}

Mep Mep::differentiate() const {
  // d/dx x^p y^q = p x^{p-1} y^q - q x^p y^q, since dy/dx = -y
  Mep out;
  for (const auto& [key, alpha] : terms_) {
    const auto [q, p] = key;
    if (p > 0) out.add_term(alpha * Rational(p), p - 1, q);
    if (q != 0) out.add_term(-alpha * Rational(q), p, q);
  }
  return out;
}

Mep Mep::shift_q(long k) const {
  Mep out;
  for (const auto& [key, alpha] : terms_) out.terms_.emplace(std::make_pair(key.first + k, key.second), alpha);
  return out;
}

Mep Mep::scale(const Rational& c) const {
  if (c.is_zero()) return {};
  Mep out = *this;
  for (auto& kv : out.terms_) kv.second *= c;
  return out;
}

Mep Mep::pow(unsigned exponent) const {
  Mep result = constant(Rational(1));
  Mep base = *this;
  while (exponent > 0) {
    if (exponent & 1U) result = result * base;
    exponent >>= 1U;
    if (exponent > 0) base = base * base;
  }
  return result;
}

Polynomial Mep::as_polynomial() const {
  if (!is_polynomial()) throw Error(ErrorKind::kPrecondition, "MEP has exponential terms");
  std::vector<Rational> c(is_zero() ? 0 : max_p() + 1);
  for (const auto& [key, alpha] : terms_) c[key.second] = alpha;
  return Polynomial(std::move(c));
}

std::vector<std::pair<long, Polynomial>> Mep::group_by_q() const {
  std::vector<std::pair<long, Polynomial>> out;
  for (auto it = terms_.begin(); it != terms_.end();) {
    const long q = it->first.first;
    std::vector<Rational> c;
    for (; it != terms_.end() && it->first.first == q; ++it) {
      const unsigned p = it->first.second;
      if (c.size() <= p) c.resize(p + 1);
      c[p] = it->second;
    }
    out.emplace_back(q, Polynomial(std::move(c)));
  }
  return out;
}

Mep Mep::from_groups(std::span<const std::pair<long, Polynomial>> groups) {
  Mep out;
  for (const auto& [q, c] : groups) out += from_polynomial(c, q);
  return out;
}

bool Mep::divisible_by_x() const {
  return !terms_.empty() &&
         std::all_of(terms_.begin(), terms_.end(), [](const auto& kv) { return kv.first.second > 0; });
}

Mep Mep::divide_by_x() const {
  if (!divisible_by_x()) throw Error(ErrorKind::kPrecondition, "MEP not divisible by x");
  Mep out;
  for (const auto& [key, alpha] : terms_) out.terms_.emplace(std::make_pair(key.first, key.second - 1), alpha);
  return out;
}

bool Mep::divisible_by_one_minus_y() const {
  // f(x, 1) == 0 as a polynomial in x
  if (terms_.empty()) return false;
  std::map<unsigned, Rational> column_sums;
  for (const auto& [key, alpha] : terms_) column_sums[key.second] += alpha;
  return std::all_of(column_sums.begin(), column_sums.end(), [](const auto& kv) { return kv.second.is_zero(); });
}

Mep Mep::divide_by_one_minus_y() const {
  if (!divisible_by_one_minus_y()) throw Error(ErrorKind::kPrecondition, "MEP not divisible by 1 - y");
  // a(y) = (1 - y) b(y)  =>  b_q = a_q + b_{q-1}, per power of x
  std::map<unsigned, std::map<long, Rational>> columns;
  for (const auto& [key, alpha] : terms_) columns[key.second][key.first] = alpha;
  Mep out;
  for (const auto& [p, col] : columns) {
    const long lo = col.begin()->first;
    const long hi = col.rbegin()->first;
    Rational running(0);
    for (long q = lo; q < hi; ++q) {
      if (auto it = col.find(q); it != col.end()) running += it->second;
      out.add_term(running, p, q);
    }
  }
  return out;
}

RationalInterval Mep::eval_with(const Rational& x, const RationalInterval& y) const {
  RationalInterval total(Rational(0));
  for (const auto& [q, c] : group_by_q()) {
    const RationalInterval cq(c.eval(x));
    total += (q == 0) ? cq : cq * y.pow(q);
  }
  return total;
}

Mep& Mep::operator+=(const Mep& rhs) {
  for (const auto& [key, alpha] : rhs.terms_) add_term(alpha, key.second, key.first);
  return *this;
}

Mep& Mep::operator-=(const Mep& rhs) {
  for (const auto& [key, alpha] : rhs.terms_) add_term(-alpha, key.second, key.first);
  return *this;
}

Mep operator*(const Mep& a, const Mep& b) {
  Mep out;
  for (const auto& [ka, va] : a.terms_) {
    for (const auto& [kb, vb] : b.terms_) out.add_term(va * vb, ka.second + kb.second, ka.first + kb.first);
  }
  return out;
}

namespace {

std::string term_body(const Rational& magnitude, unsigned p, long q) {
  std::vector<std::string> factors;
  if (magnitude != Rational(1) || (p == 0 && q == 0)) factors.push_back(magnitude.str());
  if (p == 1) factors.emplace_back("x");
  if (p >= 2) factors.push_back("x^" + std::to_string(p));
  if (q == 1) factors.emplace_back("exp(-x)");
  if (q == -1) factors.emplace_back("exp(x)");
  if (q >= 2) factors.push_back("exp(-" + std::to_string(q) + "*x)");
  if (q <= -2) factors.push_back("exp(" + std::to_string(-q) + "*x)");
  std::string out;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (i > 0) out += " * ";
    out += factors[i];
  }
  return out;
}

}  // namespace

std::string Mep::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [key, alpha] : terms_) {
    const bool negative = alpha.sign() < 0;
    if (out.empty()) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    out += term_body(alpha.abs(), key.second, key.first);
  }
  return out;
}

std::ostream& operator<<(std::ostream& os, const Mep& f) { return os << f.str(); }

Mep normalize(std::span<const MepTerm> terms) { return Mep(terms).normalized(); }

RescaledMep rescale_rational_q(std::span<const RationalQTerm> terms, const Rational& a, const Rational& b) {
  mpz_class v = 1;
  for (const auto& t : terms) {
    if (t.q.sign() < 0) throw Error(ErrorKind::kPrecondition, "rescale_rational_q needs q >= 0");
    v = lcm(v, t.q.denominator());
  }
  const Rational vr(v);
  std::vector<MepTerm> out;
  out.reserve(terms.size());
  for (const auto& t : terms) {
    const Rational qv = t.q * vr;
    out.push_back({t.alpha * vr.pow(t.p), t.p, qv.numerator().get_si()});
  }
  return {Mep(out), vr, a / vr, b / vr};
}

// ---------------------------------------------------------------------------

ExpRational::ExpRational(Mep num, Mep den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw Error(ErrorKind::kPrecondition, "ExpRational with zero denominator");
}

bool ExpRational::is_mep() const {
  const auto t = den_.terms();
  return t.size() == 1 && t[0].p == 0 && t[0].q == 0;
}

ExpRational ExpRational::differentiate() const {
  return {num_.differentiate() * den_ - num_ * den_.differentiate(), den_ * den_};
}

ExpRational ExpRational::normalized() const {
  const long q = std::min(num_.is_zero() ? 0 : num_.min_q(), den_.min_q());
  if (q >= 0) return *this;
  return {num_.shift_q(-q), den_.shift_q(-q)};
}

ExpRational ExpRational::reduce_trivial_factors() const {
  Mep n = num_, d = den_;
  if (n.is_zero()) return {Mep{}, Mep::constant(Rational(1))};
  while (n.divisible_by_x() && d.divisible_by_x()) {
    n = n.divide_by_x();
    d = d.divide_by_x();
  }
  const long common_q = std::min(n.min_q(), d.min_q());
  if (common_q > 0) {
    n = n.shift_q(-common_q);
    d = d.shift_q(-common_q);
  }
  while (n.divisible_by_one_minus_y() && d.divisible_by_one_minus_y()) {
    n = n.divide_by_one_minus_y();
    d = d.divide_by_one_minus_y();
  }
  return {std::move(n), std::move(d)};
}

ExpRational& ExpRational::operator+=(const ExpRational& rhs) {
  if (den_ == rhs.den_) {
    num_ += rhs.num_;
  } else {
    num_ = num_ * rhs.den_ + rhs.num_ * den_;
    den_ = den_ * rhs.den_;
  }
  return *this;
}

ExpRational& ExpRational::operator-=(const ExpRational& rhs) {
  if (den_ == rhs.den_) {
    num_ -= rhs.num_;
  } else {
    num_ = num_ * rhs.den_ - rhs.num_ * den_;
    den_ = den_ * rhs.den_;
  }
  return *this;
}

ExpRational& ExpRational::operator*=(const ExpRational& rhs) {
  num_ = num_ * rhs.num_;
  den_ = den_ * rhs.den_;
  return *this;
}

ExpRational& ExpRational::operator/=(const ExpRational& rhs) {
  if (rhs.num_.is_zero()) throw Error(ErrorKind::kPrecondition, "division by the zero MEP");
  num_ = num_ * rhs.den_;
  den_ = den_ * rhs.num_;
  return *this;
}

std::string ExpRational::str() const {
  if (is_mep()) return den_.terms()[0].alpha == Rational(1) ? num_.str() : "(" + num_.str() + ")/(" + den_.str() + ")";
  return "(" + num_.str() + ")/(" + den_.str() + ")";
}

namespace {

RationalInterval exp_neg_positive(const Rational& x, const Rational& delta) {
  RationalInterval y = enclose_exp(-x, delta);
  if (y.lo().sign() < 0) y = RationalInterval(Rational(0), y.hi());  // e^{-x} > 0
  return y;
}

}  // namespace

RationalInterval eval_enclosure(const Mep& f, const Rational& x, const Rational& eps) {
  if (f.is_polynomial()) return RationalInterval(f.as_polynomial().eval(x));
  return refine_until(eps, [&](const Rational& delta) { return f.eval_with(x, exp_neg_positive(x, delta)); });
}

RationalInterval eval_enclosure(const ExpRational& f, const Rational& x, const Rational& eps) {
  const Mep& n = f.numerator();
  const Mep& d = f.denominator();
  if (n.is_polynomial() && d.is_polynomial()) {
    const Rational dv = d.as_polynomial().eval(x);
    if (dv.is_zero()) throw Error(ErrorKind::kIndeterminate, "denominator vanishes at x = " + x.str());
    return RationalInterval(n.as_polynomial().eval(x) / dv);
  }
  return refine_until(eps, [&](const Rational& delta) {
    const RationalInterval y = exp_neg_positive(x, delta);
    return n.eval_with(x, y) / d.eval_with(x, y);
  });
}

}  // namespace mepprove
