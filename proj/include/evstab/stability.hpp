#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "evstab/dynamics.hpp"
#include "evstab/errors.hpp"
#include "evstab/extint.hpp"
#include "evstab/gf.hpp"
#include "evstab/poly.hpp"
#include "evstab/projpoint.hpp"

namespace evstab {

// Certification strategies. Each checks the hypotheses of one valuation
// criterion exactly and, when they all hold, proves a bound B on the number
// of irreducible factors (with multiplicity) of every iterated preimage
// polynomial it covers.
enum class Strategy { Eisenstein, EvStab1, EvStab2, PolyCor, FullMain };

inline std::string strategy_name(Strategy s) {
  switch (s) {
    case Strategy::Eisenstein: return "eisenstein";
    case Strategy::EvStab1: return "evstab1";
    case Strategy::EvStab2: return "evstab2";
    case Strategy::PolyCor: return "polycor";
    case Strategy::FullMain: return "fullmain";
  }
  internal_check(false, "strategy_name: bad enum");
  return {};
}

struct Hypothesis {
  std::string name;
  bool holds;
  std::string witness;
};

// Emitted only when every hypothesis holds. `bound` is the exact valuation
// named by the criterion, always >= 1. `residue_return_time` is the least
// i >= 1 with phi~^i(alpha~) = alpha~ (fullmain only, i <= #P^1(k)).
// `presumed_nonperiodic_cap` is set when non-periodicity of alpha was only
// verified up to an orbit cap rather than decided exactly.
struct StabilityCertificate {
  Strategy strategy;
  std::vector<Hypothesis> hypotheses;
  long long bound = 0;
  int residue_return_time = 0;
  std::optional<int> presumed_nonperiodic_cap;

  std::string describe() const {
    std::string s = strategy_name(strategy) + ": B = " + std::to_string(bound);
    if (strategy == Strategy::FullMain)
      s += ", i = " + std::to_string(residue_return_time);
    if (presumed_nonperiodic_cap)
      s += ", caveat: presumed-nonperiodic(" +
           std::to_string(*presumed_nonperiodic_cap) + ")";
    return s;
  }
};

// Checklist is filled up to and including the first failing hypothesis;
// `refusal` names that hypothesis, or is empty on success.
struct CertifyResult {
  std::optional<StabilityCertificate> certificate;
  std::vector<Hypothesis> hypotheses;
  std::string refusal;

  bool ok() const { return certificate.has_value(); }
};

namespace detail {

inline bool hyp(std::vector<Hypothesis>& hs, std::string name, bool holds,
                std::string witness) {
  hs.push_back({std::move(name), holds, std::move(witness)});
  return holds;
}

inline CertifyResult refuse(std::vector<Hypothesis> hs) {
  CertifyResult r;
  r.refusal = hs.back().name;
  r.hypotheses = std::move(hs);
  return r;
}

inline CertifyResult grant(Strategy s, std::vector<Hypothesis> hs,
                           long long bound) {
  internal_check(bound >= 1, "certificate bound must be positive");
  CertifyResult r;
  StabilityCertificate c;
  c.strategy = s;
  c.hypotheses = hs;
  c.bound = bound;
  r.certificate = std::move(c);
  r.hypotheses = std::move(hs);
  return r;
}

} // namespace detail

// Generalized Eisenstein bound: for f = a_d z^d + ... + a_0 with a_0 != 0,
// v(a_d) = 0 and v(a_i) > 0 for all i < d, f has at most v(a_0) irreducible
// factors (with multiplicity) over K.
template <class K, class V>
CertifyResult eisenstein_bound(const Poly<K>& f, const V& v) {
  if (f.deg() < 1)
    throw ArgumentError("eisenstein_bound: nonconstant polynomial required");
  int d = f.deg();
  std::vector<Hypothesis> hs;

  K a0 = f.coeff(0);
  if (!detail::hyp(hs, "constant term nonzero", !a0.is_zero(),
                   "a0 = " + a0.to_string()))
    return detail::refuse(std::move(hs));

  ExtInt vlead = v.value(f.lc());
  if (!detail::hyp(hs, "leading coefficient is a v-unit", vlead == ExtInt(0),
                   "v(a" + std::to_string(d) + ") = " + vlead.to_string()))
    return detail::refuse(std::move(hs));

  int bad = -1;
  ExtInt badv(0);
  for (int i = 0; i < d; ++i) {
    ExtInt vi = v.value(f.coeff(i));
    if (!(vi > ExtInt(0))) {
      bad = i;
      badv = vi;
      break;
    }
  }
  if (!detail::hyp(hs, "lower coefficients in the maximal ideal", bad < 0,
                   bad < 0 ? "v(a_i) > 0 for all i < " + std::to_string(d)
                           : "v(a" + std::to_string(bad) +
                                 ") = " + badv.to_string()))
    return detail::refuse(std::move(hs));

  return detail::grant(Strategy::Eisenstein, std::move(hs),
                       v.value(a0).finite());
}

// Report for the fixed-valuation orbit lemma: under good reduction with
// phi(0) != 0, v(phi(0)) > 0 and v(phi'(0)) > 0, every forward value of 0
// keeps the valuation of phi(0). A violation after the hypotheses pass is an
// implementation bug, not a refusal.
struct OrbitValuationReport {
  std::vector<Hypothesis> hypotheses;
  std::string refusal;
  std::vector<long long> valuations; // v(phi^n(0)), n = 1..n_max

  bool ok() const { return refusal.empty(); }
};

template <class K, class V>
OrbitValuationReport orbit_valuation_check(const RationalMap<K>& phi,
                                           const V& v, int n_max) {
  if (n_max < 1)
    throw ArgumentError("orbit_valuation_check: n_max >= 1 required");
  OrbitValuationReport rep;
  auto fail = [&rep]() { rep.refusal = rep.hypotheses.back().name; };

  ReductionReport<K> rr = good_reduction(phi, v);
  if (!detail::hyp(rep.hypotheses, "good reduction", rr.good,
                   "v(Res) = " + std::to_string(rr.res_valuation))) {
    fail();
    return rep;
  }

  K zero = field_zero(phi.f().lc());
  ProjPoint<K> x1 = apply(phi, ProjPoint<K>(zero));
  bool nonzero = x1.is_infinity() || !x1.value().is_zero();
  if (!detail::hyp(rep.hypotheses, "phi(0) != 0", nonzero,
                   "phi(0) = " + x1.to_string())) {
    fail();
    return rep;
  }

  ExtInt v1 = v.value(x1);
  if (!detail::hyp(rep.hypotheses, "v(phi(0)) > 0", v1 > ExtInt(0),
                   "v(phi(0)) = " + v1.to_string())) {
    fail();
    return rep;
  }

  // v(phi(0)) > 0 finite forces g(0) a unit, so the quotient-rule value of
  // phi' at 0 is well defined.
  K f0 = phi.f().coeff(0);
  K g0 = phi.g().coeff(0);
  K dphi0 = (phi.f().derivative().evaluate(zero) * g0 -
             f0 * phi.g().derivative().evaluate(zero)) /
            (g0 * g0);
  ExtInt vd = v.value(dphi0);
  if (!detail::hyp(rep.hypotheses, "v(phi'(0)) > 0", vd > ExtInt(0),
                   "v(phi'(0)) = " + vd.to_string())) {
    fail();
    return rep;
  }

  long long base = v1.finite();
  ProjPoint<K> cur = x1;
  for (int n = 1; n <= n_max; ++n) {
    ExtInt vn = v.value(cur);
    internal_check(vn.is_finite() && vn.finite() == base,
                   "orbit_valuation_check: valuation drifted");
    rep.valuations.push_back(vn.finite());
    if (n < n_max) cur = apply(phi, cur);
  }
  return rep;
}

// Every iterate numerator f_n has at most v(phi(0)) irreducible factors when
// phi has good reduction, phi(0) != 0 and the residue numerator is C*z^d.
template <class K, class V>
CertifyResult evstab1_certificate(const RationalMap<K>& phi, const V& v) {
  std::vector<Hypothesis> hs;

  ReductionReport<K> rr = good_reduction(phi, v);
  if (!detail::hyp(hs, "good reduction", rr.good,
                   "v(Res) = " + std::to_string(rr.res_valuation)))
    return detail::refuse(std::move(hs));

  K zero = field_zero(phi.f().lc());
  ProjPoint<K> ph0 = apply(phi, ProjPoint<K>(zero));
  bool nonzero = ph0.is_infinity() || !ph0.value().is_zero();
  if (!detail::hyp(hs, "phi(0) != 0", nonzero, "phi(0) = " + ph0.to_string()))
    return detail::refuse(std::move(hs));

  const Poly<GFElem>& fr = rr.f_red;
  bool mono = fr.deg() == phi.degree() &&
              fr == Poly<GFElem>::monomial(fr.lc(), fr.deg());
  if (!detail::hyp(hs, "residue numerator is C*z^d", mono,
                   "f~ = " + fr.to_string()))
    return detail::refuse(std::move(hs));

  ExtInt b = v.value(ph0);
  internal_check(b.is_finite(), "evstab1: v(phi(0)) not finite");
  return detail::grant(Strategy::EvStab1, std::move(hs), b.finite());
}

// Preimage polynomials of alpha have at most v(phi(alpha) - alpha) (or
// v(1/phi(alpha) - 1/alpha) when v(alpha) < 0 or alpha = inf) irreducible
// factors when phi has good reduction, phi(alpha) != alpha, and the residue
// fiber over alpha~ is the single point alpha~.
template <class K, class V>
CertifyResult evstab2_certificate(const RationalMap<K>& phi, const V& v,
                                  const ProjPoint<K>& alpha) {
  std::vector<Hypothesis> hs;

  ReductionReport<K> rr = good_reduction(phi, v);
  if (!detail::hyp(hs, "good reduction", rr.good,
                   "v(Res) = " + std::to_string(rr.res_valuation)))
    return detail::refuse(std::move(hs));

  ProjPoint<K> pha = apply(phi, alpha);
  if (!detail::hyp(hs, "phi(alpha) != alpha", !(pha == alpha),
                   "phi(alpha) = " + pha.to_string()))
    return detail::refuse(std::move(hs));

  const RationalMap<GFElem>& red = *rr.reduced;
  ProjPoint<GFElem> ared = v.reduce_point(alpha);
  int d = red.degree();
  bool fiber;
  std::string w;
  if (ared.is_infinity()) {
    // conjugating by z -> 1/z moves the fiber question to 0
    RationalMap<GFElem> psi = conjugate(red, inversion(red.f().lc()));
    const Poly<GFElem>& fp = psi.f();
    fiber = fp.deg() == d && fp == Poly<GFElem>::monomial(fp.lc(), d);
    w = "numerator of 1/phi~(1/z) is " + fp.to_string();
  } else {
    GFElem at = ared.value();
    Poly<GFElem> P = red.f() - Poly<GFElem>::constant(at) * red.g();
    internal_check(!P.is_zero(), "evstab2: residue map is constant");
    Poly<GFElem> lin{std::vector<GFElem>{-at, field_one(at)}};
    fiber = P.deg() == d && P == lin.pow(d).scaled(P.lc());
    w = "f~ - alpha~*g~ = " + P.to_string();
  }
  if (!detail::hyp(hs, "residue fiber over alpha is {alpha}", fiber,
                   std::move(w)))
    return detail::refuse(std::move(hs));

  K zero = field_zero(phi.f().lc());
  bool invert = alpha.is_infinity() || v.value(alpha.value()) < ExtInt(0);
  ExtInt b(0);
  if (invert) {
    internal_check(pha.is_infinity() || !pha.value().is_zero(),
                   "evstab2: phi(alpha) = 0 in the inversion branch");
    K r1 = pha.is_infinity() ? zero : pha.value().inv();
    K r2 = alpha.is_infinity() ? zero : alpha.value().inv();
    b = v.value(r1 - r2);
  } else {
    internal_check(!pha.is_infinity(),
                   "evstab2: phi(alpha) infinite in the translation branch");
    b = v.value(pha.value() - alpha.value());
  }
  internal_check(b.is_finite() && b.finite() >= 1,
                 "evstab2: bound not positive");
  return detail::grant(Strategy::EvStab2, std::move(hs), b.finite());
}

// Polynomial special case: for polynomial phi with good reduction and
// v(alpha) < 0, every preimage polynomial of alpha has at most -v(alpha)
// irreducible factors.
template <class K, class V>
CertifyResult polycor_bound(const RationalMap<K>& phi, const V& v,
                            const ProjPoint<K>& alpha) {
  std::vector<Hypothesis> hs;

  if (!detail::hyp(hs, "map is a polynomial", phi.is_polynomial(),
                   "denominator " + phi.g().to_string()))
    return detail::refuse(std::move(hs));

  ReductionReport<K> rr = good_reduction(phi, v);
  if (!detail::hyp(hs, "good reduction", rr.good,
                   "v(Res) = " + std::to_string(rr.res_valuation)))
    return detail::refuse(std::move(hs));

  bool neg = !alpha.is_infinity() && v.value(alpha.value()) < ExtInt(0);
  if (!detail::hyp(hs, "alpha finite with v(alpha) < 0", neg,
                   alpha.is_infinity()
                       ? std::string("alpha = inf")
                       : "v(alpha) = " + v.value(alpha.value()).to_string()))
    return detail::refuse(std::move(hs));

  return detail::grant(Strategy::PolyCor, std::move(hs),
                       -v.value(alpha.value()).finite());
}

// Decision data for "bijective on P^1 of every finite extension of the
// residue field": syntactically, the map must be z -> z^(p^j) followed by a
// fractional linear map, i.e. (c1*z^(p^j) + c2)/(c3*z^(p^j) + c4) with
// degree exactly p^j. On failure a collision witness is searched over
// P^1(GF(q^e)) for e = 1, 2, 3 (small fields only); the witness is optional
// because collisions of high-degree points can live in larger extensions.
struct BijectivityWitness {
  int ext_degree;
  ProjPoint<GFElem> x, y;  // distinct points with the same image
  ProjPoint<GFElem> image;
};

struct BijectivityResult {
  bool bijective = false;
  int frob_power = 0;              // j, valid when bijective
  std::vector<GFElem> normal_form; // c1, c2, c3, c4, valid when bijective
  std::optional<BijectivityWitness> witness;

  std::string describe() const {
    if (bijective) {
      std::string s = "j = " + std::to_string(frob_power) + ", c = (";
      for (size_t i = 0; i < normal_form.size(); ++i)
        s += (i ? ", " : "") + normal_form[i].to_string();
      return s + ")";
    }
    if (witness)
      return "collision over the degree-" +
             std::to_string(witness->ext_degree) + " extension: " +
             witness->x.to_string() + " and " + witness->y.to_string() +
             " both map to " + witness->image.to_string();
    return "not of the form (c1*z^(p^j) + c2)/(c3*z^(p^j) + c4)";
  }
};

inline BijectivityResult is_bijective_on_residue_extensions(
    const RationalMap<GFElem>& phi) {
  const GFContext* ctx = phi.f().lc().ctx();
  int d = phi.degree();

  long long pj = 1;
  int j = 0;
  while (pj < d) {
    pj *= ctx->p;
    ++j;
  }
  auto supported_on_0_d = [d](const Poly<GFElem>& h) {
    for (int t = 1; t < d && t <= h.deg(); ++t)
      if (!h.coeff(t).is_zero()) return false;
    return true;
  };

  BijectivityResult res;
  if (pj == d && supported_on_0_d(phi.f()) && supported_on_0_d(phi.g())) {
    res.bijective = true;
    res.frob_power = j;
    res.normal_form = {phi.f().coeff(d), phi.f().coeff(0), phi.g().coeff(d),
                       phi.g().coeff(0)};
    return res;
  }

  constexpr long long kSearchCap = 1 << 21;
  for (int e = 1; e <= 3; ++e) {
    long long qe = 1;
    bool huge = false;
    for (int t = 0; t < e; ++t) {
      if (ctx->q > kSearchCap / qe) {
        huge = true;
        break;
      }
      qe *= ctx->q;
    }
    if (huge) break;

    const GFContext* ext = gf_construct(ctx->p, ctx->m * e);
    auto embed = [&](const Poly<GFElem>& h) {
      std::vector<GFElem> c;
      c.reserve((size_t)h.deg() + 1);
      for (int t = 0; t <= h.deg(); ++t)
        c.push_back(gf_embed(h.coeff(t), ext));
      return Poly<GFElem>(std::move(c));
    };
    RationalMap<GFElem> big(embed(phi.f()), embed(phi.g()));

    auto key_of = [&](const ProjPoint<GFElem>& x) {
      return x.is_infinity() ? ext->q : gf_element_index(x.value());
    };
    auto point_at = [&](long long k) {
      return k == ext->q ? ProjPoint<GFElem>::infinity()
                         : ProjPoint<GFElem>(gf_element_at(ext, k));
    };
    std::vector<long long> first(static_cast<size_t>(ext->q) + 1, -1);
    for (const ProjPoint<GFElem>& x : p1_points(ext)) {
      ProjPoint<GFElem> img = apply(big, x);
      long long k = key_of(img);
      if (first[(size_t)k] >= 0) {
        res.witness = BijectivityWitness{e, point_at(first[(size_t)k]), x, img};
        return res;
      }
      first[(size_t)k] = key_of(x);
    }
  }
  return res;
}

// Composite criterion: good reduction plus a residue map bijective on every
// finite extension make alpha~ return to itself in some minimal i <= #P^1(k)
// steps; for non-periodic alpha the bound of evstab2 applied to phi^i then
// covers every preimage polynomial of (phi, alpha).
template <class K, class V>
CertifyResult fullmain_certificate(const RationalMap<K>& phi, const V& v,
                                   const ProjPoint<K>& alpha) {
  std::vector<Hypothesis> hs;

  ReductionReport<K> rr = good_reduction(phi, v);
  if (!detail::hyp(hs, "good reduction", rr.good,
                   "v(Res) = " + std::to_string(rr.res_valuation)))
    return detail::refuse(std::move(hs));

  BijectivityResult bij = is_bijective_on_residue_extensions(*rr.reduced);
  if (!detail::hyp(hs, "residue map bijective on residue extensions",
                   bij.bijective, bij.describe()))
    return detail::refuse(std::move(hs));

  ProjPoint<GFElem> ared = v.reduce_point(alpha);
  long long q = v.residue_field()->q;
  ProjPoint<GFElem> cur = ared;
  long long i = 0;
  do {
    cur = apply(*rr.reduced, cur);
    ++i;
  } while (!(cur == ared) && i <= q + 1);
  internal_check(cur == ared && i <= q + 1,
                 "fullmain: residue orbit failed to return");
  detail::hyp(hs, "residue orbit returns to alpha",
              true, "i = " + std::to_string(i));

  RationalMap<K> phii = iterate(phi, i); // may throw ResourceError
  OrbitRecord<K> orec = orbit(phi, alpha);
  ProjPoint<K> phii_a = apply(phii, alpha);
  bool nonperiodic =
      orec.status != OrbitStatus::Periodic && !(phii_a == alpha);
  if (!detail::hyp(hs, "alpha not periodic", nonperiodic,
                   "orbit " + orec.describe() + ", phi^" + std::to_string(i) +
                       "(alpha) = " + phii_a.to_string()))
    return detail::refuse(std::move(hs));

  CertifyResult inner = evstab2_certificate(phii, v, alpha);
  internal_check(inner.ok(), "fullmain: delegated certificate refused");
  for (const Hypothesis& h : inner.hypotheses)
    hs.push_back({"iterate " + std::to_string(i) + ": " + h.name, h.holds,
                  h.witness});

  CertifyResult r;
  StabilityCertificate c;
  c.strategy = Strategy::FullMain;
  c.hypotheses = hs;
  c.bound = inner.certificate->bound;
  c.residue_return_time = (int)i;
  if (orec.status == OrbitStatus::Unresolved)
    c.presumed_nonperiodic_cap = orec.cap;
  r.certificate = std::move(c);
  r.hypotheses = std::move(hs);
  return r;
}

} // namespace evstab
