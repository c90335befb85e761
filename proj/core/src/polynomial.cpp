#include "mepprove/polynomial.hpp"

#include <ostream>

#include "mepprove/error.hpp"

namespace mepprove {

Polynomial::Polynomial(std::vector<Rational> coefficients) : coeffs_(std::move(coefficients)) { trim(); }

Polynomial Polynomial::constant(Rational c) { return Polynomial(std::vector<Rational>{std::move(c)}); }

Polynomial Polynomial::monomial(Rational c, unsigned degree) {
  if (c.is_zero()) return {};
  std::vector<Rational> v(degree + 1);
  v[degree] = std::move(c);
  return Polynomial(std::move(v));
}

void Polynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

Rational Polynomial::coefficient(std::size_t power) const {
  return power < coeffs_.size() ? coeffs_[power] : Rational(0);
}

const Rational& Polynomial::leading() const {
  if (coeffs_.empty()) throw Error(ErrorKind::kZeroPolynomial, "leading coefficient of 0");
  return coeffs_.back();
}

Rational Polynomial::eval(const Rational& x) const {
  mpq_class acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc *= x.raw();
    acc += it->raw();
  }
  return Rational(std::move(acc));
}

RationalInterval Polynomial::eval(const RationalInterval& x) const {
  RationalInterval acc(Rational(0));
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc = acc * x + RationalInterval(*it);
  }
  return acc;
}

Polynomial Polynomial::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<Rational> d(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = coeffs_[i] * Rational(i);
  return Polynomial(std::move(d));
}

Polynomial Polynomial::compose_linear(const Rational& q) const {
  std::vector<Rational> out(coeffs_.size());
  Rational power(1);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    out[i] = coeffs_[i] * power;
    power *= q;
  }
  return Polynomial(std::move(out));
}

Polynomial Polynomial::scale(const Rational& c) const {
  if (c.is_zero()) return {};
  std::vector<Rational> out(coeffs_);
  for (auto& v : out) v *= c;
  return Polynomial(std::move(out));
}

Polynomial Polynomial::primitive() const {
  if (is_zero()) return {};
  mpz_class den_lcm = 1;
  for (const auto& c : coeffs_) den_lcm = lcm(den_lcm, c.denominator());
  mpz_class content = 0;
  for (const auto& c : coeffs_) {
    mpz_class n = c.numerator() * (den_lcm / c.denominator());
    mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), n.get_mpz_t());
  }
  return scale(Rational(den_lcm, content));
}

Polynomial Polynomial::monic() const {
  if (is_zero()) return {};
  return scale(leading().reciprocal());
}

Polynomial& Polynomial::operator+=(const Polynomial& rhs) {
  if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size());
  for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] += rhs.coeffs_[i];
  trim();
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& rhs) {
  if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size());
  for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] -= rhs.coeffs_[i];
  trim();
  return *this;
}

Polynomial& Polynomial::operator*=(const Polynomial& rhs) {
  if (is_zero() || rhs.is_zero()) {
    coeffs_.clear();
    return *this;
  }
  std::vector<mpq_class> out(coeffs_.size() + rhs.coeffs_.size() - 1);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i].is_zero()) continue;
    for (std::size_t j = 0; j < rhs.coeffs_.size(); ++j) out[i + j] += coeffs_[i].raw() * rhs.coeffs_[j].raw();
  }
  coeffs_.clear();
  coeffs_.reserve(out.size());
  for (auto& v : out) coeffs_.emplace_back(std::move(v));
  trim();
  return *this;
}

std::pair<Polynomial, Polynomial> Polynomial::divmod(const Polynomial& num, const Polynomial& den) {
  if (den.is_zero()) throw Error(ErrorKind::kZeroPolynomial, "polynomial division by zero");
  if (num.degree() < den.degree()) return {Polynomial{}, num};
  std::vector<mpq_class> rem;
  rem.reserve(num.coeffs_.size());
  for (const auto& c : num.coeffs_) rem.push_back(c.raw());
  const std::size_t dd = den.coeffs_.size() - 1;
  const mpq_class lead_inv = 1 / den.coeffs_.back().raw();
  std::vector<Rational> quot(num.coeffs_.size() - dd);
  for (std::size_t k = quot.size(); k-- > 0;) {
    mpq_class f = rem[k + dd] * lead_inv;
    if (sgn(f) == 0) continue;
    for (std::size_t j = 0; j <= dd; ++j) rem[k + j] -= f * den.coeffs_[j].raw();
    quot[k] = Rational(std::move(f));
  }
  rem.resize(dd);
  std::vector<Rational> r;
  r.reserve(rem.size());
  for (auto& v : rem) r.emplace_back(std::move(v));
  return {Polynomial(std::move(quot)), Polynomial(std::move(r))};
}

std::string Polynomial::str(std::string_view var, bool descending) const {
  if (is_zero()) return "0";
  std::string out;
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    const std::size_t i = descending ? coeffs_.size() - 1 - k : k;
    const Rational& c = coeffs_[i];
    if (c.is_zero()) continue;
    const bool negative = c.sign() < 0;
    if (out.empty()) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    const Rational mag = c.abs();
    std::string mono;
    if (i >= 1) mono = std::string(var);
    if (i >= 2) mono += "^" + std::to_string(i);
    if (mono.empty()) {
      out += mag.str();
    } else if (mag == Rational(1)) {
      out += mono;
    } else {
      out += mag.str() + "*" + mono;
    }
  }
  return out;
}

std::ostream& operator<<(std::ostream& os, const Polynomial& p) { return os << p.str(); }

Polynomial gcd(const Polynomial& a, const Polynomial& b) {
  Polynomial u = a, v = b;
  while (!v.is_zero()) {
    auto [q, r] = Polynomial::divmod(u, v);
    u = std::move(v);
    v = r.monic();
  }
  return u.monic();
}

Polynomial squarefree_part(const Polynomial& p) {
  if (p.is_zero()) throw Error(ErrorKind::kZeroPolynomial, "squarefree part of 0");
  if (p.degree() == 0) return Polynomial::constant(Rational(p.leading().sign()));
  const Polynomial g = gcd(p, p.derivative());
  Polynomial q = Polynomial::divmod(p, g).first;
  return q.primitive();
}

}  // namespace mepprove
