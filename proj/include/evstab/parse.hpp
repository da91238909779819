#pragma once

#include <algorithm>
#include <cctype>
#include <string>
#include <variant>
#include <vector>

#include "evstab/dynamics.hpp"
#include "evstab/errors.hpp"
#include "evstab/funcfield.hpp"
#include "evstab/gf.hpp"
#include "evstab/poly.hpp"
#include "evstab/projpoint.hpp"
#include "evstab/rat.hpp"

namespace evstab {

enum class FieldKind { Q, GF, FuncField };

// A parsed coefficient field: Q, GF(p^m), or GF(p^m)(t). For the latter two,
// ctx is the canonical context of the (base) finite field.
struct FieldDesc {
  FieldKind kind = FieldKind::Q;
  const GFContext* ctx = nullptr;

  std::string describe() const {
    switch (kind) {
      case FieldKind::Q:
        return "Q";
      case FieldKind::GF:
        return ctx->describe();
      case FieldKind::FuncField:
        return ctx->describe() + "(t)";
    }
    return "?";
  }

  friend bool operator==(const FieldDesc& a, const FieldDesc& b) {
    return a.kind == b.kind && a.ctx == b.ctx;
  }
};

using MapVariant = std::variant<RationalMap<Rat>, RationalMap<GFElem>,
                                RationalMap<FuncFieldElem>>;
using PointVariant = std::variant<ProjPoint<Rat>, ProjPoint<GFElem>,
                                  ProjPoint<FuncFieldElem>>;
using PolyVariant =
    std::variant<Poly<Rat>, Poly<GFElem>, Poly<FuncFieldElem>>;

namespace parsing {

inline constexpr int kExprDegreeCap = 4096;
inline constexpr long kExponentCap = 1L << 20;

struct Token {
  enum Kind {
    Int, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, Comma, End
  };
  Kind kind;
  size_t pos;
  mpz_class value;  // Int
  std::string text; // Ident
};

inline std::vector<Token> tokenize(const std::string& s) {
  std::vector<Token> out;
  size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace((unsigned char)c)) {
      ++i;
      continue;
    }
    if (std::isdigit((unsigned char)c)) {
      size_t j = i;
      while (j < s.size() && std::isdigit((unsigned char)s[j])) ++j;
      Token t{Token::Int, i, mpz_class(s.substr(i, j - i)), ""};
      out.push_back(std::move(t));
      i = j;
      continue;
    }
    if (std::isalpha((unsigned char)c)) {
      size_t j = i;
      while (j < s.size() && std::isalnum((unsigned char)s[j])) ++j;
      out.push_back({Token::Ident, i, mpz_class(0), s.substr(i, j - i)});
      i = j;
      continue;
    }
    Token::Kind k;
    switch (c) {
      case '+': k = Token::Plus; break;
      case '-': k = Token::Minus; break;
      case '*': k = Token::Star; break;
      case '/': k = Token::Slash; break;
      case '^': k = Token::Caret; break;
      case '(': k = Token::LParen; break;
      case ')': k = Token::RParen; break;
      case ',': k = Token::Comma; break;
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", i);
    }
    out.push_back({k, i, mpz_class(0), ""});
    ++i;
  }
  out.push_back({Token::End, s.size(), mpz_class(0), ""});
  return out;
}

// Field-specific literal handling for the expression evaluator.
template <class K>
struct FieldOps;

template <>
struct FieldOps<Rat> {
  const GFContext* ctx = nullptr;
  Rat from_int(const mpz_class& n) const { return Rat(n); }
  bool has_t() const { return false; }
  Rat t() const { throw InternalError("t over Q"); }
  Rat zero() const { return Rat(0); }
};

template <>
struct FieldOps<GFElem> {
  const GFContext* ctx;
  GFElem from_int(const mpz_class& n) const {
    mpz_class r = n % (long)ctx->p;
    if (r < 0) r += (long)ctx->p;
    return GFElem(ctx, r.get_si());
  }
  bool has_t() const { return false; }
  GFElem t() const { throw InternalError("t over GF(q)"); }
  GFElem zero() const { return GFElem(ctx, 0); }
};

template <>
struct FieldOps<FuncFieldElem> {
  const GFContext* ctx;
  FuncFieldElem from_int(const mpz_class& n) const {
    return field_from_mpz(FuncFieldElem(ctx), n);
  }
  bool has_t() const { return true; }
  FuncFieldElem t() const { return FuncFieldElem::t(ctx); }
  FuncFieldElem zero() const { return FuncFieldElem(ctx); }
};

// Rational function in z accumulated during evaluation; reduction to lowest
// terms is deferred to the consumer (RationalMap construction or polynomial
// extraction), only degree caps are enforced here.
template <class K>
struct RatFunc {
  Poly<K> num, den;

  void check_cap(size_t) const {
    long long nd = num.is_zero() ? 0 : num.deg();
    if (nd > kExprDegreeCap || den.deg() > kExprDegreeCap)
      throw ResourceError("expression degree exceeds cap " +
                          std::to_string(kExprDegreeCap));
  }
};

template <class K>
class Evaluator {
 public:
  Evaluator(const std::vector<Token>& toks, FieldOps<K> ops, bool allow_z)
      : toks_(toks), ops_(ops), allow_z_(allow_z) {}

  RatFunc<K> run() {
    RatFunc<K> v = expr();
    expect_end();
    return v;
  }

 private:
  const std::vector<Token>& toks_;
  FieldOps<K> ops_;
  bool allow_z_;
  size_t at_ = 0;

  const Token& peek() const { return toks_[at_]; }
  const Token& next() { return toks_[at_++]; }

  [[noreturn]] void fail(const std::string& msg, size_t pos) {
    throw ParseError(msg, pos);
  }

  void expect_end() {
    if (peek().kind != Token::End) fail("unexpected trailing input", peek().pos);
  }

  Poly<K> one() const { return Poly<K>::constant(field_one(ops_.zero())); }

  RatFunc<K> expr() {
    RatFunc<K> acc = term();
    while (peek().kind == Token::Plus || peek().kind == Token::Minus) {
      const Token& op = next();
      RatFunc<K> rhs = term();
      Poly<K> cross = op.kind == Token::Plus
                          ? acc.num * rhs.den + rhs.num * acc.den
                          : acc.num * rhs.den - rhs.num * acc.den;
      acc = {std::move(cross), acc.den * rhs.den};
      acc.check_cap(op.pos);
    }
    return acc;
  }

  RatFunc<K> term() {
    RatFunc<K> acc = unary();
    while (peek().kind == Token::Star || peek().kind == Token::Slash) {
      const Token& op = next();
      RatFunc<K> rhs = unary();
      if (op.kind == Token::Star) {
        acc = {acc.num * rhs.num, acc.den * rhs.den};
      } else {
        if (rhs.num.is_zero()) fail("division by zero", op.pos);
        acc = {acc.num * rhs.den, acc.den * rhs.num};
      }
      acc.check_cap(op.pos);
    }
    return acc;
  }

  RatFunc<K> unary() {
    if (peek().kind == Token::Minus) {
      next();
      RatFunc<K> v = unary();
      return {-v.num, std::move(v.den)};
    }
    return power();
  }

  RatFunc<K> power() {
    RatFunc<K> base = atom();
    if (peek().kind != Token::Caret) return base;
    next();
    mpz_class e = exponent();
    if (e > kExponentCap) throw ResourceError("exponent exceeds cap");
    unsigned long n = e.get_ui();
    long long basedeg =
        std::max(base.num.is_zero() ? 0 : base.num.deg(), base.den.deg());
    if (basedeg > 0 && basedeg * (long long)n > kExprDegreeCap)
      throw ResourceError("expression degree exceeds cap " +
                          std::to_string(kExprDegreeCap));
    RatFunc<K> out{one(), one()};
    for (unsigned long i = 0; i < n; ++i)
      out = {out.num * base.num, out.den * base.den};
    return out;
  }

  // nonnegative integer exponents; a ^ chain in the exponent folds
  // right-associatively on integers
  mpz_class exponent() {
    if (peek().kind != Token::Int)
      fail("exponent must be a nonnegative integer", peek().pos);
    mpz_class b = next().value;
    if (peek().kind != Token::Caret) return b;
    next();
    mpz_class e = exponent();
    if (e > 64 || (b > 1 && e * (long)mpz_sizeinbase(b.get_mpz_t(), 2) > 64))
      throw ResourceError("exponent exceeds cap");
    mpz_class out;
    mpz_pow_ui(out.get_mpz_t(), b.get_mpz_t(), e.get_ui());
    if (out > kExponentCap) throw ResourceError("exponent exceeds cap");
    return out;
  }

  RatFunc<K> atom() {
    const Token& t = peek();
    switch (t.kind) {
      case Token::Int: {
        next();
        return {Poly<K>::constant(ops_.from_int(t.value)), one()};
      }
      case Token::Ident: {
        next();
        if (t.text == "z") {
          if (!allow_z_) fail("z is not allowed here", t.pos);
          return {Poly<K>::monomial(field_one(ops_.zero()), 1), one()};
        }
        if (t.text == "t") {
          if (!ops_.has_t())
            fail("t is only defined over a rational function field", t.pos);
          return {Poly<K>::constant(ops_.t()), one()};
        }
        fail("unknown symbol '" + t.text + "'", t.pos);
      }
      case Token::LParen: {
        next();
        RatFunc<K> v = expr();
        if (peek().kind != Token::RParen) fail("expected ')'", peek().pos);
        next();
        return v;
      }
      default:
        fail("expected a value", t.pos);
    }
  }
};

template <class K>
RatFunc<K> evaluate(const std::string& s, FieldOps<K> ops, bool allow_z) {
  std::vector<Token> toks = tokenize(s);
  return Evaluator<K>(toks, ops, allow_z).run();
}

// reduce to a polynomial: numerator must be divisible by the denominator
template <class K>
Poly<K> to_poly(RatFunc<K> v, const std::string& what) {
  Poly<K> g = poly_gcd(v.num, v.den);
  if (g.deg() > 0) {
    v.num = exact_divide(v.num, g);
    v.den = exact_divide(v.den, g);
  }
  if (v.den.deg() > 0)
    throw ParseError(what + " is not a polynomial", 0);
  return v.num.scaled(v.den.lc().inv());
}

inline bool small_prime(long long n) {
  if (n < 2) return false;
  for (long long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

} // namespace parsing

// "Q" | "GF(p)" | "GF(p,m)", optionally followed by "(t)" on the GF forms.
inline FieldDesc parse_field(const std::string& s) {
  using parsing::Token;
  std::vector<Token> toks = parsing::tokenize(s);
  size_t at = 0;
  auto expect = [&](Token::Kind k, const char* what) -> const Token& {
    if (toks[at].kind != k) throw ParseError(std::string("expected ") + what, toks[at].pos);
    return toks[at++];
  };
  const Token& head = expect(Token::Ident, "a field name");
  if (head.text == "Q") {
    if (toks[at].kind != Token::End)
      throw ParseError("unexpected trailing input", toks[at].pos);
    return {FieldKind::Q, nullptr};
  }
  if (head.text != "GF")
    throw ParseError("unknown field '" + head.text + "'", head.pos);
  expect(Token::LParen, "'('");
  const Token& ptok = expect(Token::Int, "a prime");
  if (ptok.value > (1L << 30))
    throw ParseError("characteristic out of range", ptok.pos);
  long long p = ptok.value.get_si();
  if (!parsing::small_prime(p)) {
    // a prime power gets a redirect to the two-argument form
    for (long long b = 2; b * b <= p; ++b) {
      if (p % b != 0) continue;
      int e = 0;
      long long q = p;
      while (q % b == 0) q /= b, ++e;
      if (q == 1 && parsing::small_prime(b))
        throw ParseError(std::to_string(p) + " not prime; use GF(" +
                             std::to_string(b) + "," + std::to_string(e) + ")",
                         ptok.pos);
      break;
    }
    throw ParseError(std::to_string(p) + " not prime", ptok.pos);
  }
  long long m = 1;
  if (toks[at].kind == Token::Comma) {
    ++at;
    const Token& mtok = expect(Token::Int, "an extension degree");
    if (mtok.value > 48) throw ParseError("extension degree out of range", mtok.pos);
    m = mtok.value.get_si();
    if (m < 1) throw ParseError("extension degree out of range", mtok.pos);
  }
  if (toks[at].kind != Token::RParen)
    throw ParseError("expected ')'", toks[at].pos);
  ++at;
  FieldKind kind = FieldKind::GF;
  if (toks[at].kind == Token::LParen) {
    ++at;
    const Token& tt = expect(Token::Ident, "'t'");
    if (tt.text != "t") throw ParseError("expected 't'", tt.pos);
    expect(Token::RParen, "')'");
    kind = FieldKind::FuncField;
  }
  if (toks[at].kind != Token::End)
    throw ParseError("unexpected trailing input", toks[at].pos);
  const GFContext* ctx;
  try {
    ctx = gf_construct(p, (int)m);
  } catch (const ArgumentError& e) {
    throw ParseError(e.what(), ptok.pos);
  }
  return {kind, ctx};
}

namespace parsing {

template <class T, class F>
T with_field(const FieldDesc& field, F&& f) {
  switch (field.kind) {
    case FieldKind::Q:
      return f(FieldOps<Rat>{nullptr});
    case FieldKind::GF:
      return f(FieldOps<GFElem>{field.ctx});
    case FieldKind::FuncField:
      return f(FieldOps<FuncFieldElem>{field.ctx});
  }
  throw InternalError("with_field: bad kind");
}

} // namespace parsing

inline MapVariant parse_map(const std::string& expr, const FieldDesc& field) {
  return parsing::with_field<MapVariant>(field, [&](auto ops) -> MapVariant {
    auto v = parsing::evaluate(expr, ops, true);
    return RationalMap(std::move(v.num), std::move(v.den));
  });
}

inline PointVariant parse_point(const std::string& expr,
                                const FieldDesc& field) {
  return parsing::with_field<PointVariant>(field, [&](auto ops) -> PointVariant {
    using K = decltype(ops.zero());
    std::vector<parsing::Token> toks = parsing::tokenize(expr);
    if (toks.size() == 2 && toks[0].kind == parsing::Token::Ident &&
        toks[0].text == "inf")
      return ProjPoint<K>::infinity();
    auto v = parsing::Evaluator<K>(toks, ops, false).run();
    K num = v.num.is_zero() ? ops.zero() : v.num.coeff(0);
    return ProjPoint<K>(num / v.den.coeff(0));
  });
}

inline PolyVariant parse_poly(const std::string& expr, const FieldDesc& field) {
  return parsing::with_field<PolyVariant>(field, [&](auto ops) -> PolyVariant {
    auto v = parsing::evaluate(expr, ops, true);
    return parsing::to_poly(std::move(v), "expression");
  });
}

// Printers whose output re-parses to the identical canonical object.
template <class K>
std::string poly_to_expr(const Poly<K>& f) {
  return f.to_string("z");
}

template <class K>
std::string map_to_expr(const RationalMap<K>& phi) {
  if (phi.g().is_one()) return poly_to_expr(phi.f());
  return "(" + poly_to_expr(phi.f()) + ")/(" + poly_to_expr(phi.g()) + ")";
}

template <class K>
std::string point_to_expr(const ProjPoint<K>& x) {
  return x.to_string();
}

} // namespace evstab
