#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "evstab/errors.hpp"
#include "evstab/funcfield.hpp"
#include "evstab/poly.hpp"
#include "evstab/projpoint.hpp"
#include "evstab/rat.hpp"
#include "evstab/valuation.hpp"

namespace evstab {

inline constexpr int kDegreeCap = 1024; // default cap on iterate degrees
inline constexpr int kOrbitCap = 64;    // default repeat-detection budget

// Orbit points over infinite fields roughly square in size each step, so a
// wandering orbit is cut off once a representation passes these limits.
inline constexpr size_t kOrbitHeightBits = 16384; // numerator + denominator
inline constexpr int kOrbitHeightDeg = 1024;      // same, in t-degrees

template <class K>
class RationalMap;
template <class K>
struct Mobius;

template <class K>
RationalMap<K> compose(const RationalMap<K>& outer, const RationalMap<K>& inner,
                       int max_degree = kDegreeCap);
template <class K>
RationalMap<K> conjugate(const RationalMap<K>& phi, const Mobius<K>& mu);

// phi = f/g held as a canonical coprime pair with d = max(deg f, deg g) >= 1.
// Canonical scaling: over Q the pair is cleared to integer coefficients with
// joint content 1 and lc(g) > 0; elsewhere g is scaled monic. Constant maps
// (including 0/0, c/0, 0/g) are rejected, so g is never the zero polynomial.
template <class K>
class RationalMap {
 public:
  RationalMap(Poly<K> f, Poly<K> g) : f_(std::move(f)), g_(std::move(g)) {
    if (f_.is_zero() && g_.is_zero())
      throw ArgumentError("rational map: f and g both zero");
    Poly<K> h = poly_gcd(f_, g_);
    if (h.deg() > 0) {
      f_ = exact_divide(f_, h);
      g_ = exact_divide(g_, h);
    }
    finish();
  }

  const Poly<K>& f() const { return f_; }
  const Poly<K>& g() const { return g_; }
  int degree() const { return d_; }
  bool is_polynomial() const { return g_.is_constant(); }

  friend bool operator==(const RationalMap& a, const RationalMap& b) {
    return a.f_ == b.f_ && a.g_ == b.g_;
  }

  std::string to_string(const std::string& var = "z") const {
    std::string fs = f_.to_string(var);
    if (g_.is_one()) return fs;
    std::string gs = g_.to_string(var);
    if (fs.find_first_of("+-*/^") != std::string::npos) fs = "(" + fs + ")";
    if (gs.find_first_of("+-*/^") != std::string::npos) gs = "(" + gs + ")";
    return fs + "/" + gs;
  }

 private:
  Poly<K> f_, g_;
  int d_ = 0;

  // composition and conjugation build pairs that are coprime by construction
  // and skip the gcd; everything else goes through the public constructor
  struct AlreadyCoprime {};
  RationalMap(Poly<K> f, Poly<K> g, AlreadyCoprime)
      : f_(std::move(f)), g_(std::move(g)) {
    finish();
  }
  template <class K2>
  friend RationalMap<K2> compose(const RationalMap<K2>&, const RationalMap<K2>&,
                                 int);
  template <class K2>
  friend RationalMap<K2> conjugate(const RationalMap<K2>&, const Mobius<K2>&);

  void finish() {
    if (f_.is_constant() && g_.is_constant())
      throw ArgumentError("rational map: constant map");
    // a constant f or g survives only alongside a nonconstant partner, and
    // the gcd step has already reduced any zero component to that case
    internal_check(!f_.is_zero() && !g_.is_zero(),
                   "RationalMap: zero component after gcd");
    if constexpr (std::is_same_v<K, Rat>) {
      mpz_class L = 1;
      for (const auto& c : f_.coeffs()) L = lcm(L, c.den());
      for (const auto& c : g_.coeffs()) L = lcm(L, c.den());
      std::vector<mpz_class> nf(f_.coeffs().size()), ng(g_.coeffs().size());
      mpz_class G = 0;
      for (size_t i = 0; i < nf.size(); ++i) {
        nf[i] = f_.coeff((int)i).num() * (L / f_.coeff((int)i).den());
        G = gcd(G, nf[i]);
      }
      for (size_t i = 0; i < ng.size(); ++i) {
        ng[i] = g_.coeff((int)i).num() * (L / g_.coeff((int)i).den());
        G = gcd(G, ng[i]);
      }
      if (sgn(ng.back()) < 0) G = -G;
      std::vector<Rat> rf(nf.size()), rg(ng.size());
      for (size_t i = 0; i < nf.size(); ++i) rf[i] = Rat(mpz_class(nf[i] / G));
      for (size_t i = 0; i < ng.size(); ++i) rg[i] = Rat(mpz_class(ng[i] / G));
      f_ = Poly<Rat>(std::move(rf));
      g_ = Poly<Rat>(std::move(rg));
    } else {
      K s = g_.lc().inv();
      f_ = f_.scaled(s);
      g_ = g_.scaled(s);
    }
    d_ = std::max(f_.deg(), g_.deg());
  }
};

// outer(inner) via degree-d homogenization of the outer pair. A coprime pair
// composed along a coprime pair is coprime with degree exactly the product,
// so only the canonical rescale runs; the degree is re-checked.
template <class K>
RationalMap<K> compose(const RationalMap<K>& outer, const RationalMap<K>& inner,
                       int max_degree) {
  long long D = (long long)outer.degree() * (long long)inner.degree();
  if (D > max_degree)
    throw ResourceError("compose: degree " + std::to_string(D) +
                        " exceeds cap " + std::to_string(max_degree));
  int d = outer.degree();
  Poly<K> u = homogeneous_compose(outer.f(), inner.f(), inner.g(), d);
  Poly<K> w = homogeneous_compose(outer.g(), inner.f(), inner.g(), d);
  RationalMap<K> r(std::move(u), std::move(w),
                   typename RationalMap<K>::AlreadyCoprime{});
  internal_check(r.degree() == (int)D, "compose: degree dropped");
  return r;
}

template <class K>
RationalMap<K> iterate(const RationalMap<K>& phi, int n,
                       int max_degree = kDegreeCap) {
  if (n < 1) throw ArgumentError("iterate: n >= 1 required");
  RationalMap<K> acc = phi;
  for (int i = 1; i < n; ++i) acc = compose(phi, acc, max_degree);
  return acc;
}

// Canonical representative of the scaling class of a polynomial: primitive
// integer coefficients with positive lead over Q, monic elsewhere.
template <class K>
Poly<K> canonical_poly(const Poly<K>& a) {
  if (a.is_zero()) return a;
  if constexpr (std::is_same_v<K, Rat>) {
    return content_primitive(a).second;
  } else {
    return a.monic();
  }
}

// f_n - alpha g_n (g_n for alpha = inf) from an already-computed iterate;
// its roots with multiplicity are the n-th preimages of alpha.
template <class K>
Poly<K> preimage_of_iterate(const RationalMap<K>& phin,
                            const ProjPoint<K>& alpha) {
  Poly<K> P = alpha.is_infinity()
                  ? phin.g()
                  : phin.f() - Poly<K>::constant(alpha.value()) * phin.g();
  internal_check(!P.is_zero(), "preimage_poly: identically zero");
  return canonical_poly(P);
}

template <class K>
Poly<K> preimage_poly(const RationalMap<K>& phi, int n,
                      const ProjPoint<K>& alpha, int max_degree = kDegreeCap) {
  return preimage_of_iterate(iterate(phi, n, max_degree), alpha);
}

enum class OrbitStatus { Periodic, Preperiodic, Unresolved };

template <class K>
struct OrbitRecord {
  std::vector<ProjPoint<K>> points; // ends with the first repeated point
  OrbitStatus status = OrbitStatus::Unresolved;
  int tail = 0;   // first index on the cycle (0 when periodic)
  int period = 0; // cycle length, minimal
  int cap = 0;    // the budget that ran out (unresolved only)

  std::string describe() const {
    switch (status) {
      case OrbitStatus::Periodic:
        return "periodic(" + std::to_string(period) + ")";
      case OrbitStatus::Preperiodic:
        return "preperiodic(tail " + std::to_string(tail) + ", period " +
               std::to_string(period) + ")";
      default:
        return "unresolved(" + std::to_string(cap) + ")";
    }
  }
};

template <class K>
ProjPoint<K> apply(const RationalMap<K>& phi, const ProjPoint<K>& x) {
  if (x.is_infinity()) {
    K fd = phi.f().coeff(phi.degree());
    K gd = phi.g().coeff(phi.degree());
    if (gd.is_zero()) return ProjPoint<K>::infinity();
    return ProjPoint<K>(fd / gd);
  }
  K fv = phi.f().evaluate(x.value());
  K gv = phi.g().evaluate(x.value());
  if (gv.is_zero()) {
    internal_check(!fv.is_zero(), "apply: coprime pair vanished jointly");
    return ProjPoint<K>::infinity();
  }
  return ProjPoint<K>(fv / gv);
}

namespace detail {

inline bool orbit_point_oversized(const ProjPoint<Rat>& x) {
  if (x.is_infinity()) return false;
  return mpz_sizeinbase(x.value().num().get_mpz_t(), 2) +
             mpz_sizeinbase(x.value().den().get_mpz_t(), 2) >
         kOrbitHeightBits;
}

inline bool orbit_point_oversized(const ProjPoint<FuncFieldElem>& x) {
  if (x.is_infinity()) return false;
  return x.value().num().deg() + x.value().den().deg() > kOrbitHeightDeg;
}

inline bool orbit_point_oversized(const ProjPoint<GFElem>&) { return false; }

} // namespace detail

// First-repeat orbit scan. Over GF(q) the budget is raised to #P^1(GF(q)),
// within which a repeat is guaranteed; elsewhere the record comes back
// unresolved(n) after n applications, n < cap when the height cutoff hit.
template <class K>
OrbitRecord<K> orbit(const RationalMap<K>& phi, const ProjPoint<K>& alpha,
                     int cap = kOrbitCap) {
  if (cap < 1) throw ArgumentError("orbit: cap >= 1 required");
  long long budget = cap;
  if constexpr (std::is_same_v<K, GFElem>)
    budget = std::max(budget, phi.f().lc().ctx()->q + 1);
  OrbitRecord<K> rec;
  rec.points.push_back(alpha);
  for (long long i = 0; i < budget; ++i) {
    ProjPoint<K> next = apply(phi, rec.points.back());
    for (size_t j = 0; j < rec.points.size(); ++j) {
      if (rec.points[j] == next) {
        rec.points.push_back(std::move(next));
        rec.period = (int)(rec.points.size() - 1) - (int)j;
        rec.tail = (int)j;
        rec.status =
            j == 0 ? OrbitStatus::Periodic : OrbitStatus::Preperiodic;
        return rec;
      }
    }
    if (detail::orbit_point_oversized(next)) {
      rec.status = OrbitStatus::Unresolved;
      rec.cap = (int)(i + 1);
      return rec;
    }
    rec.points.push_back(std::move(next));
  }
  if constexpr (std::is_same_v<K, GFElem>)
    internal_check(false, "orbit: no repeat within #P^1(GF(q))");
  rec.status = OrbitStatus::Unresolved;
  rec.cap = cap;
  return rec;
}

// Coefficientwise reduction into the residue field; valuations must be >= 0.
template <class K, class V>
Poly<GFElem> reduce_poly(const Poly<K>& a, const V& v) {
  if (a.is_zero()) return Poly<GFElem>();
  std::vector<GFElem> c(a.coeffs().size(), GFElem(v.residue_field(), 0));
  for (size_t i = 0; i < c.size(); ++i) c[i] = v.reduce(a.coeff((int)i));
  return Poly<GFElem>(std::move(c));
}

template <class K>
struct ReductionReport {
  bool good = false;
  Poly<K> f, g;                // v-normalized pair: min coefficient valuation 0
  long long res_valuation = 0; // v(Res of the degree-d homogenizations)
  Poly<GFElem> f_red, g_red;   // the normalized pair reduced coefficientwise
  std::optional<RationalMap<GFElem>> reduced; // lowest terms, when nonconstant
};

// Good-reduction test: v-normalize, then v(Res) = 0 decides, cross-checked
// against gcd(f~, g~) = 1 and max(deg f~, deg g~) = d. The two must agree.
template <class K, class V>
ReductionReport<K> good_reduction(const RationalMap<K>& phi, const V& v) {
  ReductionReport<K> rep;
  bool first = true;
  long long m = 0;
  auto scan = [&](const Poly<K>& a) {
    for (const auto& c : a.coeffs()) {
      if (c.is_zero()) continue;
      long long w = v.value(c).finite();
      if (first || w < m) m = w;
      first = false;
    }
  };
  scan(phi.f());
  scan(phi.g());
  auto shift = [&](const Poly<K>& a) {
    if (m == 0) return a;
    std::vector<K> c = a.coeffs();
    for (auto& x : c) x = v.scale(x, -m);
    return Poly<K>(std::move(c));
  };
  rep.f = shift(phi.f());
  rep.g = shift(phi.g());
  K res = resultant_padded(rep.f, rep.g, phi.degree());
  internal_check(!res.is_zero(), "good_reduction: coprime pair resultant is 0");
  rep.res_valuation = v.value(res).finite();
  internal_check(rep.res_valuation >= 0,
                 "good_reduction: negative resultant valuation");
  rep.good = rep.res_valuation == 0;
  rep.f_red = reduce_poly(rep.f, v);
  rep.g_red = reduce_poly(rep.g, v);
  bool direct = false;
  if (!rep.f_red.is_zero() && !rep.g_red.is_zero())
    direct = poly_gcd(rep.f_red, rep.g_red).is_constant() &&
             std::max(rep.f_red.deg(), rep.g_red.deg()) == phi.degree();
  internal_check(direct == rep.good,
                 "good_reduction: resultant and gcd tests disagree");
  if (!rep.f_red.is_zero() && !rep.g_red.is_zero()) {
    Poly<GFElem> h = poly_gcd(rep.f_red, rep.g_red);
    if (std::max(rep.f_red.deg(), rep.g_red.deg()) > h.deg())
      rep.reduced.emplace(rep.f_red, rep.g_red);
  }
  return rep;
}

// Mobius transformation z -> (a z + b)/(c z + d).
template <class K>
struct Mobius {
  K a, b, c, d;
  K det() const { return a * d - b * c; }
};

template <class K>
Mobius<K> translation(const K& alpha) {
  return {field_one(alpha), alpha, field_zero(alpha), field_one(alpha)};
}

// z -> 1/z; the argument only supplies the coefficient field.
template <class K>
Mobius<K> inversion(const K& sample) {
  return {field_zero(sample), field_one(sample), field_one(sample),
          field_zero(sample)};
}

// mu^{-1} . phi . mu. The theorem engine uses the two special cases
// conjugate(phi, translation(a)) = phi(z+a) - a and
// conjugate(phi, inversion(.)) = 1/phi(1/z).
template <class K>
RationalMap<K> conjugate(const RationalMap<K>& phi, const Mobius<K>& mu) {
  if (mu.det().is_zero()) throw ArgumentError("conjugate: singular matrix");
  int d = phi.degree();
  Poly<K> U(std::vector<K>{mu.b, mu.a});
  Poly<K> W(std::vector<K>{mu.d, mu.c});
  Poly<K> fu = homogeneous_compose(phi.f(), U, W, d);
  Poly<K> gu = homogeneous_compose(phi.g(), U, W, d);
  // mu^{-1}(w) = (d w - b)/(-c w + a) applied to w = fu/gu
  Poly<K> num = fu.scaled(mu.d) - gu.scaled(mu.b);
  Poly<K> den = gu.scaled(mu.a) - fu.scaled(mu.c);
  RationalMap<K> r(std::move(num), std::move(den),
                   typename RationalMap<K>::AlreadyCoprime{});
  internal_check(r.degree() == d, "conjugate: degree changed");
  return r;
}

} // namespace evstab
