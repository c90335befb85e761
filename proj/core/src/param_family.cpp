#include "mepprove/param_family.hpp"

#include <algorithm>

#include "mepprove/error.hpp"
#include "mepprove/exp_enclosure.hpp"
#include "mepprove/parser.hpp"

namespace mepprove {

namespace {

std::string term_text(const Rational& c, unsigned p, std::vector<std::string> factors) {
  if (p == 1) factors.insert(factors.begin(), "x");
  if (p > 1) factors.insert(factors.begin(), "x^" + std::to_string(p));
  if (factors.empty()) return c.str();
  std::string body;
  for (const auto& f : factors) body += (body.empty() ? "" : " * ") + f;
  if (c == Rational(1)) return body;
  if (c == Rational(-1)) return "-" + body;
  return c.str() + " * " + body;
}

std::string scaled_x(const Rational& u) {
  if (u == Rational(1)) return "x";
  if (u == Rational(-1)) return "-x";
  return u.str() + "*x";
}

std::string join_terms(const std::vector<std::string>& parts) {
  if (parts.empty()) return "0";
  std::string s;
  for (const auto& t : parts) {
    if (s.empty()) {
      s = t;
    } else if (t.starts_with("-")) {
      s += " - " + t.substr(1);
    } else {
      s += " + " + t;
    }
  }
  return s;
}

}  // namespace

bool AlphaSlice::exact() const {
  return by_constant.empty() || (by_constant.size() == 1 && by_constant.begin()->first.is_zero());
}

std::vector<RationalQTerm> AlphaSlice::exact_terms() const {
  auto it = by_constant.find(Rational(0));
  return it == by_constant.end() ? std::vector<RationalQTerm>{} : it->second;
}

RationalInterval AlphaSlice::enclose(const Rational& x, const Rational& eps) const {
  std::size_t count = 0;
  for (const auto& [k, ts] : by_constant) count += ts.size();
  if (count == 0) return RationalInterval(Rational(0));
  return refine_until(eps, [&](const Rational& delta) {
    RationalInterval sum(Rational(0));
    for (const auto& [k, ts] : by_constant) {
      for (const auto& t : ts) {
        const Rational scale = t.alpha * x.pow(static_cast<long>(t.p));
        if (scale.is_zero()) continue;
        const Rational d = delta / (scale.abs() * count);
        sum = sum + scale * enclose_exp(-(k + t.q * x), d);
      }
    }
    return sum;
  });
}

std::string AlphaSlice::str() const {
  std::vector<std::string> parts;
  for (const auto& [k, ts] : by_constant) {
    for (const auto& t : ts) {
      std::vector<std::string> factors;
      if (!t.q.is_zero()) factors.push_back("exp(" + scaled_x(-t.q) + ")");
      if (!k.is_zero()) factors.push_back("exp(" + (-k).str() + ")");
      parts.push_back(term_text(t.alpha, t.p, factors));
    }
  }
  return join_terms(parts);
}

ParamExpFamily::ParamExpFamily(const std::vector<ParamTerm>& terms) {
  for (const auto& t : terms) add(t.c, t.p, t.r, t.u, t.v);
}

void ParamExpFamily::add(const Rational& c, unsigned p, unsigned r, const Rational& u, const Rational& v) {
  if (c.is_zero()) return;
  const Key k{p, r, u, v};
  auto [it, inserted] = terms_.emplace(k, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

std::vector<ParamTerm> ParamExpFamily::terms() const {
  std::vector<ParamTerm> out;
  for (const auto& [k, c] : terms_) out.push_back({c, std::get<0>(k), std::get<1>(k), std::get<2>(k), std::get<3>(k)});
  return out;
}

ParamExpFamily& ParamExpFamily::operator+=(const ParamExpFamily& rhs) {
  for (const auto& [k, c] : rhs.terms_) add(c, std::get<0>(k), std::get<1>(k), std::get<2>(k), std::get<3>(k));
  return *this;
}

ParamExpFamily operator*(const ParamExpFamily& a, const ParamExpFamily& b) {
  ParamExpFamily out;
  for (const auto& [ka, ca] : a.terms_) {
    for (const auto& [kb, cb] : b.terms_) {
      out.add(ca * cb, std::get<0>(ka) + std::get<0>(kb), std::get<1>(ka) + std::get<1>(kb),
              std::get<2>(ka) + std::get<2>(kb), std::get<3>(ka) + std::get<3>(kb));
    }
  }
  return out;
}

ParamExpFamily ParamExpFamily::scale(const Rational& c) const {
  ParamExpFamily out;
  for (const auto& [k, v] : terms_) out.add(v * c, std::get<0>(k), std::get<1>(k), std::get<2>(k), std::get<3>(k));
  return out;
}

ParamExpFamily ParamExpFamily::derivative_alpha() const {
  ParamExpFamily out;
  for (const auto& [k, c] : terms_) {
    const auto& [p, r, u, v] = k;
    if (r > 0) out.add(c * Rational(static_cast<long>(r)), p, r - 1, u, v);
    out.add(-c * u, p + 1, r, u, v);
    out.add(-c * v, p, r, u, v);
  }
  return out;
}

AlphaSlice ParamExpFamily::substitute_alpha(const Rational& alpha0) const {
  if (alpha0.sign() < 0) throw Error(ErrorKind::kPrecondition, "alpha must be nonnegative");
  // Merge on (k, p, q) first so cancellations are exact.
  std::map<std::tuple<Rational, Rational, unsigned>, Rational> merged;
  for (const auto& [key, c] : terms_) {
    const auto& [p, r, u, v] = key;
    const Rational coeff = c * alpha0.pow(static_cast<long>(r));
    if (coeff.is_zero()) continue;
    merged[{alpha0 * v, alpha0 * u, p}] += coeff;
  }
  AlphaSlice slice;
  slice.alpha = alpha0;
  for (const auto& [key, c] : merged) {
    if (c.is_zero()) continue;
    const auto& [k, q, p] = key;
    slice.by_constant[k].push_back(RationalQTerm{c, p, q});
  }
  return slice;
}

ParamExpFamily ParamExpFamily::substitute_x(const Rational& x0) const {
  ParamExpFamily out;
  for (const auto& [k, c] : terms_) {
    const auto& [p, r, u, v] = k;
    out.add(c * x0.pow(static_cast<long>(p)), 0, r, Rational(0), u * x0 + v);
  }
  return out;
}

RationalInterval ParamExpFamily::enclose(const Rational& alpha, const Rational& x, const Rational& eps) const {
  return substitute_alpha(alpha).enclose(x, eps);
}

std::string ParamExpFamily::str() const {
  std::vector<std::string> parts;
  for (const auto& [k, c] : terms_) {
    const auto& [p, r, u, v] = k;
    std::vector<std::string> factors;
    if (r == 1) factors.push_back("a");
    if (r > 1) factors.push_back("a^" + std::to_string(r));
    if (!u.is_zero() || !v.is_zero()) {
      std::string lin = u.is_zero() ? "" : scaled_x(u);
      if (!v.is_zero()) {
        if (lin.empty()) {
          lin = v.str();
        } else {
          lin += v.sign() > 0 ? " + " + v.str() : " - " + (-v).str();
        }
      }
      const bool single = lin == "x" || lin == "1";
      factors.push_back(single ? "exp(-a" + std::string(lin == "x" ? "*x" : "") + ")" : "exp(-a*(" + lin + "))");
    }
    parts.push_back(term_text(c, p, factors));
  }
  return join_terms(parts);
}

ParamExpFamily ParamExpFamily::from_expr(const Expr& e) {
  using K = Expr::Kind;
  auto constant = [](const Rational& c) { return ParamExpFamily({ParamTerm{c, 0, 0, Rational(0), Rational(0)}}); };
  switch (e.kind()) {
    case K::kNumber: return constant(e.value());
    case K::kVarX: return ParamExpFamily({ParamTerm{Rational(1), 1, 0, Rational(0), Rational(0)}});
    case K::kVarA: return ParamExpFamily({ParamTerm{Rational(1), 0, 1, Rational(0), Rational(0)}});
    case K::kE: throw Error(ErrorKind::kUnsupported, "constant e outside exp() in a family");
    case K::kSign: throw Error(ErrorKind::kUnsupported, "sign() in a family");
    case K::kExp: {
      auto f = bilinear_form(e.lhs());
      if (!f) throw Error(ErrorKind::kParse, "nonlinearity inside exp");
      if (!f->c0.is_zero() || !f->cx.is_zero()) {
        throw Error(ErrorKind::kUnsupported, "family exponent must be -a*(u*x + v)");
      }
      return ParamExpFamily({ParamTerm{Rational(1), 0, 0, -f->cxa, -f->ca}});
    }
    case K::kNeg: return from_expr(e.lhs()).scale(Rational(-1));
    case K::kAdd: return from_expr(e.lhs()) + from_expr(e.rhs());
    case K::kSub: return from_expr(e.lhs()) + from_expr(e.rhs()).scale(Rational(-1));
    case K::kMul: return from_expr(e.lhs()) * from_expr(e.rhs());
    case K::kDiv: {
      const ParamExpFamily d = from_expr(e.rhs());
      const auto ts = d.terms();
      if (ts.size() != 1 || ts[0].p != 0 || ts[0].r != 0 || !ts[0].u.is_zero() || !ts[0].v.is_zero()) {
        throw Error(ErrorKind::kUnsupported, "family division by a non-constant");
      }
      return from_expr(e.lhs()).scale(ts[0].c.reciprocal());
    }
    case K::kPow: {
      if (e.exponent() < 0) throw Error(ErrorKind::kUnsupported, "negative power in a family");
      const ParamExpFamily b = from_expr(e.lhs());
      ParamExpFamily acc = constant(Rational(1));
      for (long i = 0; i < e.exponent(); ++i) acc = acc * b;
      return acc;
    }
  }
  throw Error(ErrorKind::kUnsupported, "unknown node");
}

RescaledMep slice_to_mep(const std::vector<RationalQTerm>& terms, const Rational& a, const Rational& b) {
  if (terms.empty()) return RescaledMep{Mep{}, Rational(1), a, b};
  Rational qmin = terms.front().q;
  for (const auto& t : terms) qmin = std::min(qmin, t.q);
  std::vector<RationalQTerm> shifted = terms;
  for (auto& t : shifted) t.q -= qmin;
  return rescale_rational_q(shifted, a, b);
}

}  // namespace mepprove
