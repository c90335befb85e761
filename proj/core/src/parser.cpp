#include "mepprove/parser.hpp"

#include <cctype>
#include <map>
#include <optional>
#include <utility>

#include "mepprove/error.hpp"

namespace mepprove {

namespace {

constexpr long kMaxExponent = 4096;
constexpr int kMaxDepth = 200;

enum class Tok { kEnd, kNumber, kIdent, kPlus, kMinus, kStar, kSlash, kCaret, kLParen, kRParen, kCmp };

struct Token {
  Tok kind = Tok::kEnd;
  std::size_t pos = 0;
  std::string text;
  Comparator cmp = Comparator::kGreater;
};

class Lexer {
 public:
  explicit Lexer(std::string_view s) : s_(s) {}

  Token next() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    Token t;
    t.pos = i_;
    if (i_ >= s_.size()) return t;
    const unsigned char c = static_cast<unsigned char>(s_[i_]);
    if (std::isdigit(c)) {
      std::size_t j = i_;
      while (j < s_.size() && std::isdigit(static_cast<unsigned char>(s_[j]))) ++j;
      if (j < s_.size() && s_[j] == '.') {
        ++j;
        if (j >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[j]))) {
          throw ParseError(j, "expected digits after decimal point");
        }
        while (j < s_.size() && std::isdigit(static_cast<unsigned char>(s_[j]))) ++j;
      }
      t.kind = Tok::kNumber;
      t.text = std::string(s_.substr(i_, j - i_));
      i_ = j;
      return t;
    }
    if (std::isalpha(c)) {
      std::size_t j = i_;
      while (j < s_.size() && std::isalpha(static_cast<unsigned char>(s_[j]))) ++j;
      t.kind = Tok::kIdent;
      t.text = std::string(s_.substr(i_, j - i_));
      i_ = j;
      return t;
    }
    auto single = [&](Tok k) {
      t.kind = k;
      ++i_;
      return t;
    };
    switch (c) {
      case '+': return single(Tok::kPlus);
      case '-': return single(Tok::kMinus);
      case '*': return single(Tok::kStar);
      case '/': return single(Tok::kSlash);
      case '^': return single(Tok::kCaret);
      case '(': return single(Tok::kLParen);
      case ')': return single(Tok::kRParen);
      case '>':
      case '<': {
        const bool gt = c == '>';
        ++i_;
        t.kind = Tok::kCmp;
        if (i_ < s_.size() && s_[i_] == '=') {
          ++i_;
          t.cmp = gt ? Comparator::kGreaterEq : Comparator::kLessEq;
        } else {
          t.cmp = gt ? Comparator::kGreater : Comparator::kLess;
        }
        return t;
      }
      default: break;
    }
    // Multibyte spellings.
    auto starts = [&](std::string_view u) { return s_.substr(i_).starts_with(u); };
    auto multi = [&](std::string_view u, Tok k) {
      t.kind = k;
      i_ += u.size();
      return t;
    };
    if (starts("\xE2\x88\x92")) return multi("\xE2\x88\x92", Tok::kMinus);
    if (starts("\xC3\x97")) return multi("\xC3\x97", Tok::kStar);
    if (starts("\xC3\xB7")) return multi("\xC3\xB7", Tok::kSlash);
    if (starts("\xE2\x89\xA5")) {
      t.cmp = Comparator::kGreaterEq;
      return multi("\xE2\x89\xA5", Tok::kCmp);
    }
    if (starts("\xE2\x89\xA4")) {
      t.cmp = Comparator::kLessEq;
      return multi("\xE2\x89\xA4", Tok::kCmp);
    }
    throw ParseError(i_, "unexpected character");
  }

 private:
  std::string_view s_;
  std::size_t i_ = 0;
};

class Parser {
 public:
  explicit Parser(std::string_view s) : lex_(s) { advance(); }

  Inequality inequality() {
    Expr left = expr();
    if (tok_.kind != Tok::kCmp) throw ParseError(tok_.pos, "expected comparator");
    const Comparator cmp = tok_.cmp;
    advance();
    Expr right = expr();
    expect_end();
    return Inequality{left, cmp, right};
  }

  Expr lone_expression() {
    Expr e = expr();
    expect_end();
    return e;
  }

 private:
  void advance() { tok_ = lex_.next(); }

  void expect_end() {
    if (tok_.kind != Tok::kEnd) throw ParseError(tok_.pos, "unexpected trailing input");
  }

  void expect(Tok k, const char* what) {
    if (tok_.kind != k) throw ParseError(tok_.pos, std::string("expected ") + what);
    advance();
  }

  struct DepthGuard {
    explicit DepthGuard(Parser& p) : p_(p) {
      if (++p_.depth_ > kMaxDepth) throw ParseError(p_.tok_.pos, "nesting too deep");
    }
    ~DepthGuard() { --p_.depth_; }
    Parser& p_;
  };

  Expr expr() {
    DepthGuard g(*this);
    Expr e = term();
    while (tok_.kind == Tok::kPlus || tok_.kind == Tok::kMinus) {
      const auto op = tok_.kind == Tok::kPlus ? Expr::Kind::kAdd : Expr::Kind::kSub;
      advance();
      e = Expr::binary(op, e, term());
    }
    return e;
  }

  Expr term() {
    Expr e = factor();
    while (tok_.kind == Tok::kStar || tok_.kind == Tok::kSlash) {
      const auto op = tok_.kind == Tok::kStar ? Expr::Kind::kMul : Expr::Kind::kDiv;
      advance();
      e = Expr::binary(op, e, factor());
    }
    return e;
  }

  Expr factor() {
    DepthGuard g(*this);
    const bool is_e = tok_.kind == Tok::kIdent && tok_.text == "e";
    const std::size_t start = tok_.pos;
    Expr b = base();
    if (tok_.kind != Tok::kCaret) return b;
    advance();
    if (is_e && b.kind() == Expr::Kind::kE && tok_.kind == Tok::kLParen) {
      advance();
      Expr arg = expr();
      expect(Tok::kRParen, "')'");
      return checked_exp(arg, start);
    }
    if (is_e && b.kind() == Expr::Kind::kE && tok_.kind == Tok::kIdent) return checked_exp(base(), start);
    return Expr::pow(b, integer_exponent());
  }

  long integer_exponent() {
    bool negative = false;
    bool paren = false;
    if (tok_.kind == Tok::kLParen) {
      paren = true;
      advance();
    }
    if (tok_.kind == Tok::kMinus) {
      negative = true;
      advance();
    }
    if (tok_.kind != Tok::kNumber || tok_.text.find('.') != std::string::npos) {
      throw ParseError(tok_.pos, "expected integer exponent");
    }
    if (tok_.text.size() > 6 || std::stol(tok_.text) > kMaxExponent) {
      throw ParseError(tok_.pos, "exponent too large");
    }
    long n = std::stol(tok_.text);
    advance();
    if (paren) expect(Tok::kRParen, "')'");
    return negative ? -n : n;
  }

  Expr base() {
    const Token t = tok_;
    switch (t.kind) {
      case Tok::kNumber:
        advance();
        return Expr::number(Rational::parse(t.text));
      case Tok::kLParen: {
        advance();
        Expr e = expr();
        expect(Tok::kRParen, "')'");
        return e;
      }
      case Tok::kMinus:
        advance();
        return Expr::neg(factor());
      case Tok::kIdent: {
        advance();
        if (t.text == "x") return Expr::var_x();
        if (t.text == "a") return Expr::var_a();
        if (t.text == "e") return Expr::e();
        if (t.text == "exp" || t.text == "sign") {
          expect(Tok::kLParen, "'('");
          Expr arg = expr();
          expect(Tok::kRParen, "')'");
          if (t.text == "sign") return Expr::sign(arg);
          return checked_exp(arg, t.pos);
        }
        throw ParseError(t.pos, "unknown identifier '" + t.text + "'");
      }
      case Tok::kEnd: throw ParseError(t.pos, "unexpected end of input");
      default: throw ParseError(t.pos, "expected operand");
    }
  }

  static Expr checked_exp(const Expr& arg, std::size_t pos) {
    if (!bilinear_form(arg)) throw ParseError(pos, "nonlinearity inside exp");
    return Expr::exp(arg);
  }

  Lexer lex_;
  Token tok_;
  int depth_ = 0;
};

// Polynomial in (x, a) with each degree at most 1.
using Bilinear = std::map<std::pair<int, int>, Rational>;

std::optional<Bilinear> to_bilinear(const Expr& e) {
  using K = Expr::Kind;
  auto combine = [](const Bilinear& l, const Bilinear& r, int sign) {
    Bilinear out = l;
    for (const auto& [k, v] : r) {
      out[k] += sign > 0 ? v : -v;
      if (out[k].is_zero()) out.erase(k);
    }
    return out;
  };
  auto multiply = [](const Bilinear& l, const Bilinear& r) -> std::optional<Bilinear> {
    Bilinear out;
    for (const auto& [kl, vl] : l) {
      for (const auto& [kr, vr] : r) {
        const std::pair<int, int> k{kl.first + kr.first, kl.second + kr.second};
        if (k.first > 1 || k.second > 1) return std::nullopt;
        out[k] += vl * vr;
        if (out[k].is_zero()) out.erase(k);
      }
    }
    return out;
  };
  switch (e.kind()) {
    case K::kNumber: return e.value().is_zero() ? Bilinear{} : Bilinear{{{0, 0}, e.value()}};
    case K::kVarX: return Bilinear{{{1, 0}, Rational(1)}};
    case K::kVarA: return Bilinear{{{0, 1}, Rational(1)}};
    case K::kE:
    case K::kExp:
    case K::kSign: return std::nullopt;
    case K::kNeg: {
      auto v = to_bilinear(e.lhs());
      if (!v) return std::nullopt;
      return combine(Bilinear{}, *v, -1);
    }
    case K::kAdd:
    case K::kSub: {
      auto l = to_bilinear(e.lhs());
      auto r = to_bilinear(e.rhs());
      if (!l || !r) return std::nullopt;
      return combine(*l, *r, e.kind() == K::kAdd ? 1 : -1);
    }
    case K::kMul: {
      auto l = to_bilinear(e.lhs());
      auto r = to_bilinear(e.rhs());
      if (!l || !r) return std::nullopt;
      return multiply(*l, *r);
    }
    case K::kDiv: {
      auto l = to_bilinear(e.lhs());
      auto r = to_bilinear(e.rhs());
      if (!l || !r) return std::nullopt;
      if (r->size() != 1 || !r->contains({0, 0})) return std::nullopt;
      const Rational inv = r->at({0, 0}).reciprocal();
      Bilinear out;
      for (const auto& [k, v] : *l) out[k] = v * inv;
      return out;
    }
    case K::kPow: {
      auto b = to_bilinear(e.lhs());
      if (!b) return std::nullopt;
      const long n = e.exponent();
      if (n < 0) {
        if (b->size() != 1 || !b->contains({0, 0})) return std::nullopt;
        return Bilinear{{{0, 0}, b->at({0, 0}).pow(n)}};
      }
      Bilinear acc{{{0, 0}, Rational(1)}};
      for (long i = 0; i < n; ++i) {
        auto next = multiply(acc, *b);
        if (!next) return std::nullopt;
        acc = std::move(*next);
        if (acc.empty()) break;
      }
      return acc;
    }
  }
  return std::nullopt;
}

}  // namespace

Inequality parse_inequality(std::string_view text) { return Parser(text).inequality(); }

Expr parse_expression(std::string_view text) { return Parser(text).lone_expression(); }

std::optional<BilinearForm> bilinear_form(const Expr& e) {
  auto b = to_bilinear(e);
  if (!b) return std::nullopt;
  auto get = [&](int i, int j) { return b->contains({i, j}) ? b->at({i, j}) : Rational(0); };
  return BilinearForm{get(0, 0), get(1, 0), get(0, 1), get(1, 1)};
}

}  // namespace mepprove
