#include "mepprove/rational.hpp"

#include <cctype>
#include <ostream>

#include "mepprove/error.hpp"

namespace mepprove {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kBudgetExceeded: return "budget-exceeded";
    case ErrorKind::kIndeterminate: return "indeterminate";
    case ErrorKind::kZeroPolynomial: return "zero-polynomial";
    case ErrorKind::kDegenerateInput: return "degenerate-input";
    case ErrorKind::kPrecondition: return "precondition-violated";
    case ErrorKind::kParse: return "parse-error";
    case ErrorKind::kUnsupported: return "unsupported";
    case ErrorKind::kMalformedCertificate: return "malformed-certificate";
  }
  return "error";
}

Rational::Rational(const mpz_class& num, const mpz_class& den) {
  if (den == 0) throw Error(ErrorKind::kPrecondition, "zero denominator");
  value_ = mpq_class(num, den);
  value_.canonicalize();
}

Rational::Rational(mpq_class value) : value_(std::move(value)) { value_.canonicalize(); }

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Rational Rational::parse(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);

  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  auto bad = [&] { return Error(ErrorKind::kParse, "not a rational: '" + std::string(text) + "'"); };

  Rational result;
  if (auto exp_pos = s.find_first_of("eE"); exp_pos != std::string_view::npos && s.find('/') == std::string_view::npos) {
    std::string_view mant = s.substr(0, exp_pos);
    std::string_view ex = s.substr(exp_pos + 1);
    bool ex_negative = false;
    if (!ex.empty() && (ex.front() == '-' || ex.front() == '+')) {
      ex_negative = ex.front() == '-';
      ex.remove_prefix(1);
    }
    if (mant.empty() || mant.front() == '-' || mant.front() == '+' || !all_digits(ex) || ex.size() > 6) throw bad();
    const Rational m = parse(mant);
    const long e = std::stol(std::string(ex));
    result = m * Rational(10).pow(ex_negative ? -e : e);
  } else if (auto slash = s.find('/'); slash != std::string_view::npos) {
    auto num = s.substr(0, slash);
    auto den = s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) throw bad();
    mpz_class d(std::string(den), 10);
    if (d == 0) throw bad();
    result = Rational(mpz_class(std::string(num), 10), d);
  } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
    auto whole = s.substr(0, dot);
    auto frac = s.substr(dot + 1);
    if ((whole.empty() && frac.empty()) || (!whole.empty() && !all_digits(whole)) ||
        (!frac.empty() && !all_digits(frac))) {
      throw bad();
    }
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
    mpz_class digits(std::string(whole.empty() ? "0" : whole) + std::string(frac), 10);
    result = Rational(digits, scale);
  } else {
    if (!all_digits(s)) throw bad();
    result = Rational(mpz_class(std::string(s), 10));
  }
  return negative ? -result : result;
}

std::string Rational::str() const {
  if (value_.get_den() == 1) return value_.get_num().get_str();
  return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

std::string Rational::to_decimal(int digits) const {
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
  // round half up on the magnitude
  mpq_class scaled = mpq_class(::abs(value_)) * scale + mpq_class(1, 2);
  mpz_class q = scaled.get_num() / scaled.get_den();
  std::string s = q.get_str();
  if (static_cast<int>(s.size()) <= digits) s.insert(0, static_cast<std::size_t>(digits) + 1 - s.size(), '0');
  if (digits > 0) s.insert(s.size() - static_cast<std::size_t>(digits), ".");
  if (sgn(value_) < 0 && q != 0) s.insert(0, "-");
  return s;
}

Rational Rational::abs() const { return Rational(mpq_class(::abs(value_))); }

Rational Rational::reciprocal() const {
  if (is_zero()) throw Error(ErrorKind::kPrecondition, "reciprocal of zero");
  return Rational(mpq_class(1) / value_);
}

Rational Rational::pow(long exponent) const {
  if (exponent < 0) return reciprocal().pow(-exponent);
  mpz_class num, den;
  mpz_pow_ui(num.get_mpz_t(), value_.get_num_mpz_t(), static_cast<unsigned long>(exponent));
  mpz_pow_ui(den.get_mpz_t(), value_.get_den_mpz_t(), static_cast<unsigned long>(exponent));
  return Rational(num, den);
}

Rational& Rational::operator+=(const Rational& rhs) {
  value_ += rhs.value_;
  return *this;
}
Rational& Rational::operator-=(const Rational& rhs) {
  value_ -= rhs.value_;
  return *this;
}
Rational& Rational::operator*=(const Rational& rhs) {
  value_ *= rhs.value_;
  return *this;
}
Rational& Rational::operator/=(const Rational& rhs) {
  if (rhs.is_zero()) throw Error(ErrorKind::kPrecondition, "division by zero");
  value_ /= rhs.value_;
  return *this;
}

Rational operator-(const Rational& v) { return Rational(mpq_class(-v.value_)); }

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

Rational factorial(unsigned n) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return Rational(f);
}

mpz_class lcm(const mpz_class& a, const mpz_class& b) {
  mpz_class r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

}  // namespace mepprove
