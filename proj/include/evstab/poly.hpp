#pragma once

#include <algorithm>
#include <compare>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "evstab/errors.hpp"
#include "evstab/extint.hpp"
#include "evstab/rat.hpp"

namespace evstab {

// Dense univariate polynomial over an exact field K. Invariant: the
// coefficient vector carries no trailing zeros; the zero polynomial is the
// empty vector (its degree is the distinguished -inf, never an integer).
template <class K>
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<K> coeffs) : c_(std::move(coeffs)) { trim(); }

  static Poly constant(const K& c) { return Poly(std::vector<K>{c}); }
  static Poly monomial(const K& c, int degree) {
    internal_check(degree >= 0, "Poly::monomial: negative degree");
    if (c.is_zero()) return Poly();
    std::vector<K> v(degree + 1, field_zero(c));
    v[degree] = c;
    return Poly(std::move(v));
  }

  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }

  ExtInt degree() const {
    return c_.empty() ? ExtInt::neg_inf() : ExtInt((long long)c_.size() - 1);
  }
  // Degree as a plain int; rejects the zero polynomial.
  int deg() const {
    internal_check(!c_.empty(), "Poly::deg: zero polynomial");
    return (int)c_.size() - 1;
  }

  const std::vector<K>& coeffs() const { return c_; }
  K coeff(int i) const {
    internal_check(!c_.empty(), "Poly::coeff: zero polynomial");
    if (i < 0 || i >= (int)c_.size()) return field_zero(c_[0]);
    return c_[i];
  }
  const K& lc() const {
    internal_check(!c_.empty(), "Poly::lc: zero polynomial");
    return c_.back();
  }
  bool is_monic() const { return !c_.empty() && c_.back().is_one(); }
  bool is_one() const { return c_.size() == 1 && c_[0].is_one(); }

  Poly operator+(const Poly& o) const {
    if (is_zero()) return o;
    if (o.is_zero()) return *this;
    std::vector<K> r = c_.size() >= o.c_.size() ? c_ : o.c_;
    const std::vector<K>& s = c_.size() >= o.c_.size() ? o.c_ : c_;
    for (size_t i = 0; i < s.size(); ++i) r[i] = r[i] + s[i];
    return Poly(std::move(r));
  }
  Poly operator-() const {
    std::vector<K> r = c_;
    for (auto& x : r) x = -x;
    return Poly(std::move(r));
  }
  Poly operator-(const Poly& o) const { return *this + (-o); }

  Poly operator*(const Poly& o) const {
    if (is_zero() || o.is_zero()) return Poly();
    std::vector<K> r(c_.size() + o.c_.size() - 1, field_zero(c_[0]));
    for (size_t i = 0; i < c_.size(); ++i) {
      if (c_[i].is_zero()) continue;
      for (size_t j = 0; j < o.c_.size(); ++j)
        r[i + j] = r[i + j] + c_[i] * o.c_[j];
    }
    return Poly(std::move(r));
  }

  Poly scaled(const K& s) const {
    if (s.is_zero()) return Poly();
    std::vector<K> r = c_;
    for (auto& x : r) x = x * s;
    return Poly(std::move(r));
  }

  Poly pow(long long e) const {
    internal_check(e >= 0, "Poly::pow: negative exponent");
    Poly acc = is_zero() ? Poly() : constant(field_one(c_[0]));
    if (e == 0) {
      internal_check(!is_zero(), "Poly::pow: 0^0");
      return acc;
    }
    Poly base = *this;
    while (e > 0) {
      if (e & 1) acc = acc * base;
      base = (e >>= 1) > 0 ? base * base : base;
    }
    return acc;
  }

  Poly derivative() const {
    if (c_.size() <= 1) return Poly();
    std::vector<K> r(c_.size() - 1, field_zero(c_[0]));
    for (size_t i = 1; i < c_.size(); ++i) {
      K mult = field_from_mpz(c_[0], mpz_class((long)i));
      r[i - 1] = c_[i] * mult;
    }
    return Poly(std::move(r));
  }

  K evaluate(const K& x) const {
    if (is_zero()) return field_zero(x);
    K acc = field_zero(x);
    for (int i = (int)c_.size() - 1; i >= 0; --i) acc = acc * x + c_[i];
    return acc;
  }

  Poly monic() const {
    internal_check(!is_zero(), "Poly::monic: zero polynomial");
    return scaled(lc().inv());
  }

  // Coefficients reversed: z^deg * f(1/z). Trailing roots at zero drop out.
  Poly reciprocal() const {
    std::vector<K> r(c_.rbegin(), c_.rend());
    return Poly(std::move(r));
  }

  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
  // Total order for canonical listings: degree first, then coefficients
  // compared from the leading one down.
  friend std::strong_ordering operator<=>(const Poly& a, const Poly& b) {
    if (a.c_.size() != b.c_.size()) return a.c_.size() <=> b.c_.size();
    for (int i = (int)a.c_.size() - 1; i >= 0; --i) {
      auto c = a.c_[i] <=> b.c_[i];
      if (c != 0) return c;
    }
    return std::strong_ordering::equal;
  }

  std::string to_string(const std::string& var = "z") const {
    if (is_zero()) return "0";
    std::string out;
    for (int i = (int)c_.size() - 1; i >= 0; --i) {
      if (c_[i].is_zero()) continue;
      std::string s = c_[i].to_string();
      bool neg = !s.empty() && s[0] == '-';
      if (neg) s = s.substr(1);
      bool composite = s.find_first_of("+-*/^") != std::string::npos;
      if (out.empty()) {
        if (neg) out += "-";
      } else {
        out += neg ? "-" : "+";
      }
      if (composite) s = "(" + s + ")";
      if (i == 0) {
        out += s;
      } else {
        if (s != "1") out += s + "*";
        out += var;
        if (i > 1) out += "^" + std::to_string(i);
      }
    }
    return out.empty() ? "0" : out;
  }

 private:
  std::vector<K> c_;
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }
};

// Quotient and remainder; the divisor must be nonzero.
template <class K>
std::pair<Poly<K>, Poly<K>> divrem(const Poly<K>& a, const Poly<K>& b) {
  if (b.is_zero()) throw ArgumentError("polynomial division by zero");
  if (a.is_zero() || a.deg() < b.deg()) return {Poly<K>(), a};
  K lcinv = b.lc().inv();
  std::vector<K> rem = a.coeffs();
  std::vector<K> quot(a.deg() - b.deg() + 1, field_zero(a.lc()));
  for (int k = a.deg() - b.deg(); k >= 0; --k) {
    K c = rem[k + b.deg()] * lcinv;
    quot[k] = c;
    if (c.is_zero()) continue;
    for (int j = 0; j <= b.deg(); ++j)
      rem[k + j] = rem[k + j] - c * b.coeff(j);
  }
  return {Poly<K>(std::move(quot)), Poly<K>(std::move(rem))};
}

template <class K>
Poly<K> poly_rem(const Poly<K>& a, const Poly<K>& b) {
  return divrem(a, b).second;
}

// Exact division; remainder must vanish.
template <class K>
Poly<K> exact_divide(const Poly<K>& a, const Poly<K>& b) {
  auto [q, r] = divrem(a, b);
  internal_check(r.is_zero(), "exact_divide: nonzero remainder");
  return q;
}

// Monic gcd via the Euclidean remainder sequence, remainders re-scaled to
// monic at every step to keep canonical coefficient sizes in check.
template <class K>
Poly<K> poly_gcd(Poly<K> a, Poly<K> b) {
  if (!a.is_zero()) a = a.monic();
  if (!b.is_zero()) b = b.monic();
  while (!b.is_zero()) {
    Poly<K> r = poly_rem(a, b);
    if (!r.is_zero()) r = r.monic();
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

// Extended gcd: (g, s, t) with s*a + t*b = g and g monic (zero only when both
// inputs are zero).
template <class K>
std::tuple<Poly<K>, Poly<K>, Poly<K>> poly_xgcd(const Poly<K>& a,
                                                const Poly<K>& b) {
  if (a.is_zero() && b.is_zero()) return {Poly<K>(), Poly<K>(), Poly<K>()};
  const K one = field_one(a.is_zero() ? b.lc() : a.lc());
  Poly<K> r0 = a, r1 = b;
  Poly<K> s0 = Poly<K>::constant(one), s1;
  Poly<K> t0, t1 = Poly<K>::constant(one);
  while (!r1.is_zero()) {
    auto [q, r] = divrem(r0, r1);
    Poly<K> s2 = s0 - q * s1;
    Poly<K> t2 = t0 - q * t1;
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  K c = r0.lc().inv();
  return {r0.scaled(c), s0.scaled(c), t0.scaled(c)};
}

template <class K>
Poly<K> compose(const Poly<K>& h, const Poly<K>& u) {
  if (h.is_zero()) return Poly<K>();
  Poly<K> acc = Poly<K>::constant(h.lc());
  for (int i = h.deg() - 1; i >= 0; --i)
    acc = acc * u + Poly<K>::constant(h.coeff(i));
  return acc;
}

// w^D * h(u/w) for D >= deg h: the degree-D homogenization of h evaluated at
// the pair (u, w). Exact in K[z]; no rational functions are formed.
template <class K>
Poly<K> homogeneous_compose(const Poly<K>& h, const Poly<K>& u,
                            const Poly<K>& w, int D) {
  if (h.is_zero()) return Poly<K>();
  int d = h.deg();
  if (D < d) throw ArgumentError("homogeneous_compose: D below deg h");
  Poly<K> acc = Poly<K>::constant(h.lc());
  Poly<K> wpow = Poly<K>::constant(field_one(h.lc())); // w^(d-i) built incrementally
  for (int i = d - 1; i >= 0; --i) {
    wpow = wpow * w;
    acc = acc * u + Poly<K>::constant(h.coeff(i)) * wpow;
  }
  for (int i = 0; i < D - d; ++i) acc = acc * w;
  return acc;
}

template <class K>
Poly<K> poly_pow_mod(const Poly<K>& base, mpz_class e, const Poly<K>& mod) {
  internal_check(e >= 0, "poly_pow_mod: negative exponent");
  internal_check(!mod.is_constant(), "poly_pow_mod: constant modulus");
  Poly<K> acc = Poly<K>::constant(field_one(mod.lc()));
  Poly<K> b = poly_rem(base, mod);
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) acc = poly_rem(acc * b, mod);
    b = poly_rem(b * b, mod);
    e >>= 1;
  }
  return acc;
}

// ---- content/primitive decomposition over Q ----

// f = content * primitive with primitive in Z[z], coefficient gcd 1 and a
// positive leading coefficient. content carries sign and denominators.
inline std::pair<Rat, Poly<Rat>> content_primitive(const Poly<Rat>& f) {
  if (f.is_zero()) return {Rat(0), Poly<Rat>()};
  mpz_class L = 1;
  for (const auto& c : f.coeffs()) L = lcm(L, c.den());
  mpz_class G = 0;
  std::vector<mpz_class> n(f.coeffs().size());
  for (size_t i = 0; i < n.size(); ++i) {
    n[i] = f.coeff((int)i).num() * (L / f.coeff((int)i).den());
    G = gcd(G, n[i]);
  }
  if (sgn(n.back()) < 0) G = -G;
  std::vector<Rat> prim(n.size());
  for (size_t i = 0; i < n.size(); ++i) prim[i] = Rat(mpz_class(n[i] / G));
  return {Rat(G, L), Poly<Rat>(std::move(prim))};
}

// ---- resultants ----

namespace detail {

// Content/primitive on raw integer vectors (low-to-high, trailing zeros kept
// by the caller's trim discipline).
inline void ztrim(std::vector<mpz_class>& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline mpz_class zcontent(const std::vector<mpz_class>& a) {
  mpz_class g = 0;
  for (const auto& c : a) g = gcd(g, c);
  return g == 0 ? mpz_class(1) : g;
}

// Pseudo-remainder: rem(lc(B)^(degA-degB+1) * A, B) over Z.
inline std::vector<mpz_class> zprem(std::vector<mpz_class> A,
                                    const std::vector<mpz_class>& B) {
  const mpz_class d = B.back();
  long long e = (long long)A.size() - (long long)B.size() + 1;
  while (!A.empty() && A.size() >= B.size()) {
    mpz_class c = A.back();
    std::vector<mpz_class> next(A.size() - 1);
    // d*A - c*z^(degA-degB)*B, leading term cancels
    size_t off = A.size() - B.size();
    for (size_t i = 0; i + 1 < A.size(); ++i) {
      next[i] = d * A[i];
      if (i >= off) next[i] -= c * B[i - off];
    }
    A = std::move(next);
    ztrim(A);
    --e;
  }
  if (e > 0) {
    mpz_class f;
    mpz_pow_ui(f.get_mpz_t(), d.get_mpz_t(), (unsigned long)e);
    for (auto& c : A) c *= f;
  }
  return A;
}

// Subresultant PRS resultant over Z (Collins/Brown; cf. the classical
// sub-resultant algorithm). Exact including sign.
inline mpz_class resultant_z(std::vector<mpz_class> A, std::vector<mpz_class> B) {
  ztrim(A);
  ztrim(B);
  if (A.empty() || B.empty()) return 0;
  long long dA = (long long)A.size() - 1, dB = (long long)B.size() - 1;
  if (dA == 0 && dB == 0) return 1;
  if (dA == 0) {
    mpz_class r;
    mpz_pow_ui(r.get_mpz_t(), A[0].get_mpz_t(), (unsigned long)dB);
    return r;
  }
  if (dB == 0) {
    mpz_class r;
    mpz_pow_ui(r.get_mpz_t(), B[0].get_mpz_t(), (unsigned long)dA);
    return r;
  }
  int s = 1;
  if (dA < dB) {
    std::swap(A, B);
    std::swap(dA, dB);
    if ((dA & 1) && (dB & 1)) s = -s;
  }
  mpz_class a = zcontent(A), b = zcontent(B);
  for (auto& c : A) c /= a;
  for (auto& c : B) c /= b;
  mpz_class t, ta, tb;
  mpz_pow_ui(ta.get_mpz_t(), a.get_mpz_t(), (unsigned long)dB);
  mpz_pow_ui(tb.get_mpz_t(), b.get_mpz_t(), (unsigned long)dA);
  t = ta * tb;
  mpz_class g = 1, h = 1;
  while (true) {
    dA = (long long)A.size() - 1;
    dB = (long long)B.size() - 1;
    long long delta = dA - dB;
    if ((dA & 1) && (dB & 1)) s = -s;
    std::vector<mpz_class> R = zprem(A, B);
    A = std::move(B);
    // B = R / (g * h^delta)
    mpz_class hp;
    mpz_pow_ui(hp.get_mpz_t(), h.get_mpz_t(), (unsigned long)delta);
    mpz_class div = g * hp;
    for (auto& c : R) {
      mpz_class q, rr;
      mpz_tdiv_qr(q.get_mpz_t(), rr.get_mpz_t(), c.get_mpz_t(), div.get_mpz_t());
      internal_check(rr == 0, "resultant_z: inexact subresultant division");
      c = q;
    }
    B = std::move(R);
    g = A.back();
    if (delta > 0) {
      // h = g^delta / h^(delta-1)
      mpz_class gn, hd;
      mpz_pow_ui(gn.get_mpz_t(), g.get_mpz_t(), (unsigned long)delta);
      mpz_pow_ui(hd.get_mpz_t(), h.get_mpz_t(), (unsigned long)(delta - 1));
      mpz_class q, rr;
      mpz_tdiv_qr(q.get_mpz_t(), rr.get_mpz_t(), gn.get_mpz_t(), hd.get_mpz_t());
      internal_check(rr == 0, "resultant_z: inexact h update");
      h = q;
    }
    if (B.empty()) return 0;
    if (B.size() == 1) {
      long long dAcur = (long long)A.size() - 1;
      mpz_class bn, hd;
      mpz_pow_ui(bn.get_mpz_t(), B[0].get_mpz_t(), (unsigned long)dAcur);
      mpz_pow_ui(hd.get_mpz_t(), h.get_mpz_t(), (unsigned long)(dAcur - 1));
      mpz_class q, rr;
      mpz_tdiv_qr(q.get_mpz_t(), rr.get_mpz_t(), bn.get_mpz_t(), hd.get_mpz_t());
      internal_check(rr == 0, "resultant_z: inexact final division");
      return s * t * q;
    }
  }
}

} // namespace detail

// Res(f, g) with the convention Res(f, g) = lc(f)^deg(g) * prod g(beta_i)
// over the roots beta_i of f. Over Q this routes through the subresultant
// PRS on integer polynomials; over finite(ly generated) fields it uses the
// Euclidean PRS with explicit leading-coefficient bookkeeping.
template <class K>
K resultant(const Poly<K>& f, const Poly<K>& g) {
  if (f.is_zero() && g.is_zero()) throw ArgumentError("resultant of (0, 0)");
  if (f.is_zero()) return field_zero(g.lc());
  if (g.is_zero()) return field_zero(f.lc());
  if (f.is_constant() && g.is_constant()) return field_one(f.lc());
  if constexpr (std::is_same_v<K, Rat>) {
    mpz_class Lf = 1, Lg = 1;
    for (const auto& c : f.coeffs()) Lf = lcm(Lf, c.den());
    for (const auto& c : g.coeffs()) Lg = lcm(Lg, c.den());
    std::vector<mpz_class> A(f.coeffs().size()), B(g.coeffs().size());
    for (size_t i = 0; i < A.size(); ++i)
      A[i] = f.coeff((int)i).num() * (Lf / f.coeff((int)i).den());
    for (size_t i = 0; i < B.size(); ++i)
      B[i] = g.coeff((int)i).num() * (Lg / g.coeff((int)i).den());
    mpz_class r = detail::resultant_z(A, B);
    // Res(A/Lf, B/Lg) = Res(A, B) / (Lf^deg g * Lg^deg f)
    mpz_class df, dg;
    mpz_pow_ui(df.get_mpz_t(), Lf.get_mpz_t(), (unsigned long)g.deg());
    mpz_pow_ui(dg.get_mpz_t(), Lg.get_mpz_t(), (unsigned long)f.deg());
    return Rat(r, df * dg);
  } else {
    Poly<K> A = f, B = g;
    K res = field_one(f.lc());
    int sign = 1;
    while (!B.is_constant()) {
      Poly<K> R = poly_rem(A, B);
      if (R.is_zero()) return field_zero(f.lc());
      long long dA = A.deg(), dB = B.deg(), dR = R.deg();
      if ((dA & 1) && (dB & 1)) sign = -sign;
      K lcb = B.lc();
      K p = field_one(f.lc());
      for (long long i = 0; i < dA - dR; ++i) p = p * lcb;
      res = res * p;
      A = std::move(B);
      B = std::move(R);
    }
    // B is a nonzero constant now
    K p = field_one(f.lc());
    for (long long i = 0; i < A.deg(); ++i) p = p * B.lc();
    res = res * p;
    return sign > 0 ? res : -res;
  }
}

// Resultant of the degree-d homogenizations of (f, g); d >= max(deg f, deg g).
// Used for good-reduction tests, where only the valuation (and vanishing) of
// the value matters; padding contributes leading-coefficient powers.
template <class K>
K resultant_padded(const Poly<K>& f, const Poly<K>& g, int d) {
  internal_check(!f.is_zero() || !g.is_zero(), "resultant_padded: zero pair");
  K sample = f.is_zero() ? g.lc() : f.lc();
  bool ffull = !f.is_zero() && f.deg() == d;
  bool gfull = !g.is_zero() && g.deg() == d;
  if (!ffull && !gfull) return field_zero(sample); // both forms divisible by Y
  if (f.is_zero() || g.is_zero()) return field_zero(sample);
  K base = resultant(f, g);
  K scale = field_one(sample);
  if (ffull) {
    for (int i = 0; i < d - g.deg(); ++i) scale = scale * f.lc();
  } else {
    for (int i = 0; i < d - f.deg(); ++i) scale = scale * g.lc();
  }
  return base * scale;
}

// disc(a) = (-1)^(d(d-1)/2) Res(a, a') / lc(a)
template <class K>
K discriminant(const Poly<K>& a) {
  if (a.is_zero() || a.is_constant())
    throw ArgumentError("discriminant needs degree >= 1");
  Poly<K> da = a.derivative();
  if (da.is_zero()) return field_zero(a.lc()); // inseparable in char p
  K r = resultant(a, da) / a.lc();
  // the derivative can lose degree in char p; pad the resultant back to the
  // generic (d, d-1) shape so the universal discriminant specializes
  for (int k = da.deg(); k < a.deg() - 1; ++k) r = r * a.lc();
  long long d = a.deg();
  return ((d * (d - 1) / 2) % 2 == 0) ? r : -r;
}

} // namespace evstab
