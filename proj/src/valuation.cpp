#include "evstab/valuation.hpp"

namespace evstab {

namespace {

// Irreducibility over GF(q): no irreducible factor of degree <= deg/2,
// detected through gcd(x^(q^e) - x, f).
bool irreducible_over_gfq(const Poly<GFElem>& f) {
  int d = f.deg();
  if (d == 1) return true;
  GFElem one = field_one(f.lc());
  Poly<GFElem> x = Poly<GFElem>::monomial(one, 1);
  Poly<GFElem> h = poly_rem(x, f);
  mpz_class q((long)f.lc().ctx()->q);
  for (int e = 1; 2 * e <= d; ++e) {
    h = poly_pow_mod(h, q, f);
    Poly<GFElem> g = poly_gcd(h - x, f);
    if (!g.is_constant()) return false;
  }
  return true;
}

} // namespace

PadicValuation::PadicValuation(long long p) : p_(p) {
  residue_ = gf_construct(p, 1); // validates primality and range
}

ExtInt PadicValuation::value(const Rat& x) const {
  if (x.is_zero()) return ExtInt::pos_inf();
  mpz_class p((long)p_), tmp;
  long long vn = 0, vd = 0;
  if (mpz_divisible_p(x.num().get_mpz_t(), p.get_mpz_t()))
    vn = (long long)mpz_remove(tmp.get_mpz_t(), x.num().get_mpz_t(), p.get_mpz_t());
  if (mpz_divisible_p(x.den().get_mpz_t(), p.get_mpz_t()))
    vd = (long long)mpz_remove(tmp.get_mpz_t(), x.den().get_mpz_t(), p.get_mpz_t());
  return ExtInt(vn - vd);
}

GFElem PadicValuation::reduce(const Rat& x) const {
  ExtInt v = value(x);
  if (v < ExtInt(0)) throw ArgumentError("reduce: negative valuation");
  mpz_class p((long)p_);
  mpz_class n = x.num() % p, d = x.den() % p;
  GFElem nn(residue_, n.get_si());
  GFElem dd(residue_, d.get_si());
  // canonical rationals are reduced, so p | den would force v < 0
  internal_check(!dd.is_zero(), "reduce: denominator vanished at p");
  return nn / dd;
}

ProjPoint<GFElem> PadicValuation::reduce_point(const ProjPoint<Rat>& x) const {
  if (x.is_infinity()) return ProjPoint<GFElem>::infinity();
  if (value(x.value()) < ExtInt(0)) return ProjPoint<GFElem>::infinity();
  return ProjPoint<GFElem>(reduce(x.value()));
}

Rat PadicValuation::scale(const Rat& x, long long k) const {
  mpz_class pk;
  mpz_pow_ui(pk.get_mpz_t(), mpz_class((long)p_).get_mpz_t(),
             (unsigned long)(k >= 0 ? k : -k));
  return k >= 0 ? x * Rat(pk) : x / Rat(pk);
}

PiAdicValuation::PiAdicValuation(const GFContext* base, Poly<GFElem> pi)
    : base_(base), pi_(std::move(pi)) {
  if (pi_.is_zero() || pi_.is_constant())
    throw ArgumentError("uniformizer must be nonconstant");
  if (!pi_.is_monic()) throw ArgumentError("uniformizer must be monic");
  for (const auto& c : pi_.coeffs())
    internal_check(c.ctx() == base_, "uniformizer not over the base field");
  if (!irreducible_over_gfq(pi_))
    throw ArgumentError("uniformizer must be irreducible: " + pi_.to_string("t"));
  residue_ = gf_construct(base_->p, base_->m * pi_.deg());
  // theta = first root (element_at order) of pi with coefficients embedded
  if (residue_ == base_) {
    // deg pi == 1 over the same field: root is -constant term
    theta_ = -pi_.coeff(0);
  } else {
    std::vector<GFElem> emb(pi_.deg() + 1, GFElem(residue_, 0));
    for (int i = 0; i <= pi_.deg(); ++i)
      emb[i] = gf_embed(pi_.coeff(i), residue_);
    Poly<GFElem> pemb((std::vector<GFElem>(emb)));
    if (residue_->q > (1LL << 22))
      throw ResourceError("residue field too large for root search");
    bool found = false;
    for (long long i = 0; i < residue_->q; ++i) {
      GFElem x = gf_element_at(residue_, i);
      if (pemb.evaluate(x).is_zero()) {
        theta_ = x;
        found = true;
        break;
      }
    }
    internal_check(found, "pi has no root in its residue field");
  }
}

long long PiAdicValuation::ord_pi(const Poly<GFElem>& u) const {
  internal_check(!u.is_zero(), "ord_pi of zero");
  long long ord = 0;
  Poly<GFElem> cur = u;
  while (true) {
    auto [q, r] = divrem(cur, pi_);
    if (!r.is_zero()) return ord;
    ++ord;
    cur = std::move(q);
    if (cur.is_zero()) return ord; // cannot happen for nonzero u, kept as guard
  }
}

ExtInt PiAdicValuation::value(const FuncFieldElem& x) const {
  if (x.is_zero()) return ExtInt::pos_inf();
  return ExtInt(ord_pi(x.num()) - ord_pi(x.den()));
}

GFElem PiAdicValuation::eval_at_theta(const Poly<GFElem>& u) const {
  GFElem acc(residue_, 0);
  if (u.is_zero()) return acc;
  for (int i = u.deg(); i >= 0; --i)
    acc = acc * theta_ + gf_embed(u.coeff(i), residue_);
  return acc;
}

GFElem PiAdicValuation::reduce(const FuncFieldElem& x) const {
  ExtInt v = value(x);
  if (v < ExtInt(0)) throw ArgumentError("reduce: negative valuation");
  GFElem d = eval_at_theta(x.den());
  internal_check(!d.is_zero(), "reduce: denominator vanished at pi");
  return eval_at_theta(x.num()) / d;
}

ProjPoint<GFElem> PiAdicValuation::reduce_point(
    const ProjPoint<FuncFieldElem>& x) const {
  if (x.is_infinity()) return ProjPoint<GFElem>::infinity();
  if (value(x.value()) < ExtInt(0)) return ProjPoint<GFElem>::infinity();
  return ProjPoint<GFElem>(reduce(x.value()));
}

FuncFieldElem PiAdicValuation::scale(const FuncFieldElem& x, long long k) const {
  FuncFieldElem pi_elem(base_, pi_,
                        Poly<GFElem>::constant(GFElem(base_, 1)));
  FuncFieldElem r = x;
  for (long long i = 0; i < (k >= 0 ? k : -k); ++i)
    r = k >= 0 ? r * pi_elem : r / pi_elem;
  return r;
}

} // namespace evstab
