#pragma once

#include <string>

#include "evstab/extint.hpp"
#include "evstab/funcfield.hpp"
#include "evstab/gf.hpp"
#include "evstab/poly.hpp"
#include "evstab/projpoint.hpp"
#include "evstab/rat.hpp"

namespace evstab {

// Discrete valuations come in two concrete flavours sharing one interface:
//   value(x)        exact valuation, v(0) = +inf, v(infinity point) = -inf
//   reduce(x)       image in the residue field, defined for v(x) >= 0
//   reduce_point(P) induced map P^1(K) -> P^1(k)
//   scale(x, k)     x * pi^k for the uniformizer pi

// p-adic valuation on Q; residue field GF(p).
class PadicValuation {
 public:
  explicit PadicValuation(long long p);

  long long p() const { return p_; }
  const GFContext* residue_field() const { return residue_; }
  std::string describe() const { return std::to_string(p_) + "-adic"; }

  ExtInt value(const Rat& x) const;
  ExtInt value(const ProjPoint<Rat>& x) const {
    return x.is_infinity() ? ExtInt::neg_inf() : value(x.value());
  }
  GFElem reduce(const Rat& x) const;
  ProjPoint<GFElem> reduce_point(const ProjPoint<Rat>& x) const;
  Rat scale(const Rat& x, long long k) const;

 private:
  long long p_;
  const GFContext* residue_;
};

// pi-adic valuation on GF(q)(t) for a monic irreducible pi in GF(q)[t]
// (pi = t gives the t-adic valuation). Residue field GF(q)[t]/(pi),
// realized inside the canonical GF(p^(m*deg pi)) by mapping t to a root
// of pi there.
class PiAdicValuation {
 public:
  PiAdicValuation(const GFContext* base, Poly<GFElem> pi);

  const GFContext* base_field() const { return base_; }
  const Poly<GFElem>& pi() const { return pi_; }
  const GFContext* residue_field() const { return residue_; }
  std::string describe() const {
    if (pi_.deg() == 1 && pi_.coeff(0).is_zero()) return "t-adic";
    return "(" + pi_.to_string("t") + ")-adic";
  }

  ExtInt value(const FuncFieldElem& x) const;
  ExtInt value(const ProjPoint<FuncFieldElem>& x) const {
    return x.is_infinity() ? ExtInt::neg_inf() : value(x.value());
  }
  GFElem reduce(const FuncFieldElem& x) const;
  ProjPoint<GFElem> reduce_point(const ProjPoint<FuncFieldElem>& x) const;
  FuncFieldElem scale(const FuncFieldElem& x, long long k) const;

 private:
  const GFContext* base_;
  Poly<GFElem> pi_;
  const GFContext* residue_;
  GFElem theta_; // image of t: the first root of the embedded pi in residue_
  // evaluate u(t) at theta with coefficients embedded into the residue field
  GFElem eval_at_theta(const Poly<GFElem>& u) const;
  long long ord_pi(const Poly<GFElem>& u) const; // multiplicity of pi in u
};

} // namespace evstab
