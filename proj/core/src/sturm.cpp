#include "mepprove/sturm.hpp"

#include "mepprove/error.hpp"

namespace mepprove {

namespace {

using IntPoly = std::vector<mpz_class>;

void trim(IntPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

void make_primitive(IntPoly& p) {
  mpz_class g = 0;
  for (const auto& c : p) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  if (g > 1) {
    for (auto& c : p) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
  }
}

IntPoly to_int_poly(const Polynomial& p) {
  const Polynomial prim = p.primitive();
  IntPoly out;
  out.reserve(prim.coefficients().size());
  for (const auto& c : prim.coefficients()) out.push_back(c.numerator());
  return out;
}

// Remainder of a by b up to a positive factor: b is negated if its leading
// coefficient is negative, so each pseudo-division step multiplies by a
// positive number.
IntPoly positive_pseudo_remainder(IntPoly a, IntPoly b) {
  if (b.back() < 0) {
    for (auto& c : b) c = -c;
  }
  const std::size_t db = b.size() - 1;
  const mpz_class& lb = b.back();
  while (!a.empty() && a.size() - 1 >= db) {
    const mpz_class la = a.back();
    const std::size_t shift = a.size() - 1 - db;
    for (auto& c : a) c *= lb;
    for (std::size_t j = 0; j <= db; ++j) a[shift + j] -= la * b[j];
    trim(a);
    make_primitive(a);
  }
  return a;
}

IntPoly derivative(const IntPoly& p) {
  IntPoly d;
  for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * static_cast<unsigned long>(i));
  trim(d);
  return d;
}

int sign_at(const IntPoly& p, const Rational& x) {
  // sign of d^k * P(n/d) = sum c_i n^i d^(k-i), with d > 0
  const mpz_class n = x.numerator();
  const mpz_class d = x.denominator();
  mpz_class acc = p.back();
  mpz_class dpow = 1;
  for (std::size_t i = p.size() - 1; i-- > 0;) {
    dpow *= d;
    acc *= n;
    acc += p[i] * dpow;
  }
  return sgn(acc);
}

Polynomial from_int_poly(const IntPoly& p) {
  std::vector<Rational> c;
  c.reserve(p.size());
  for (const auto& v : p) c.emplace_back(v);
  return Polynomial(std::move(c));
}

}  // namespace

SturmChain::SturmChain(const Polynomial& p) {
  if (p.is_zero()) throw Error(ErrorKind::kZeroPolynomial, "Sturm chain of 0");
  IntPoly head = to_int_poly(squarefree_part(p));
  chain_.push_back(head);
  IntPoly next = derivative(head);
  if (next.empty()) return;
  make_primitive(next);
  chain_.push_back(next);
  while (chain_.back().size() > 1) {
    IntPoly r = positive_pseudo_remainder(chain_[chain_.size() - 2], chain_.back());
    if (r.empty()) break;  // cannot happen for a squarefree head
    for (auto& c : r) c = -c;
    make_primitive(r);
    chain_.push_back(std::move(r));
  }
}

int SturmChain::variations(const Rational& x) const {
  int count = 0;
  int last = 0;
  for (const auto& p : chain_) {
    const int s = sign_at(p, x);
    if (s == 0) continue;
    if (last != 0 && s != last) ++count;
    last = s;
  }
  return count;
}

int SturmChain::count_half_open(const Rational& a, const Rational& b) const {
  return variations(a) - variations(b);
}

std::vector<Polynomial> SturmChain::sequence() const {
  std::vector<Polynomial> out;
  out.reserve(chain_.size());
  for (const auto& p : chain_) out.push_back(from_int_poly(p));
  return out;
}

Polynomial SturmChain::head() const { return from_int_poly(chain_.front()); }

SturmCounts sturm_counts(const Polynomial& p, const Rational& a, const Rational& b) {
  if (!(a < b)) throw Error(ErrorKind::kPrecondition, "need a < b");
  const SturmChain chain(p);
  SturmCounts counts;
  counts.v_a = chain.variations(a);
  counts.v_b = chain.variations(b);
  counts.endpoint_adjust = p.eval(b).is_zero() ? 1 : 0;
  return counts;
}

int count_roots_open(const Polynomial& p, const Rational& a, const Rational& b) {
  return sturm_counts(p, a, b).roots();
}

bool is_positive_on(const Polynomial& p, const Rational& a, const Rational& b) {
  if (count_roots_open(p, a, b) != 0) return false;
  return p.eval((a + b) / 2).sign() > 0;
}

RationalInterval isolate_root(const Polynomial& p, const Rational& a, const Rational& b,
                              const Rational& eps) {
  if (eps.sign() <= 0) throw Error(ErrorKind::kPrecondition, "eps must be positive");
  const SturmChain chain(p);
  auto open_count = [&](const Rational& lo, const Rational& hi) {
    return chain.count_half_open(lo, hi) - (p.eval(hi).is_zero() ? 1 : 0);
  };
  if (!(a < b) || open_count(a, b) != 1) {
    throw Error(ErrorKind::kPrecondition, "isolate_root needs exactly one root in (a, b)");
  }
  if (p.degree() == 1) return RationalInterval(-p.coefficient(0) / p.coefficient(1));
  Rational lo = a, hi = b;
  while (!(hi - lo < eps)) {
    Rational mid = (lo + hi) / 2;
    if (p.eval(mid).is_zero()) return RationalInterval(mid);
    if (open_count(lo, mid) == 1) {
      hi = std::move(mid);
    } else {
      lo = std::move(mid);
    }
  }
  return {lo, hi};
}

}  // namespace mepprove
