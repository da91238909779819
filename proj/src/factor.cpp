#include "evstab/factor.hpp"

#include <algorithm>
#include <random>
#include <utility>

namespace evstab {

namespace {

using GPoly = Poly<GFElem>;

// Inverse of z -> z^p on polynomials whose exponents are all multiples of p.
GPoly pth_root_poly(const GPoly& f) {
  long long p = field_char(f.lc());
  std::vector<GFElem> out(f.deg() / (int)p + 1, field_zero(f.lc()));
  for (int i = 0; i <= f.deg(); ++i) {
    GFElem c = f.coeff(i);
    if (c.is_zero()) continue;
    internal_check(i % (int)p == 0, "pth_root_poly: stray exponent");
    out[i / (int)p] = c.pth_root();
  }
  return GPoly(std::move(out));
}

// Squarefree parts of a monic f, each tagged with its multiplicity * stride.
// Factors whose multiplicity is divisible by p hide in gcd(f, f') and are
// recovered through a p-th root and recursion.
void sff_monic(const GPoly& f, int stride,
               std::vector<std::pair<GPoly, int>>& out) {
  long long p = field_char(f.lc());
  GPoly df = f.derivative();
  if (df.is_zero()) {
    sff_monic(pth_root_poly(f), stride * (int)p, out);
    return;
  }
  GPoly c = poly_gcd(f, df);
  GPoly w = exact_divide(f, c);
  int i = 1;
  while (!w.is_one()) {
    GPoly y = poly_gcd(w, c);
    GPoly part = exact_divide(w, y);
    if (!part.is_one()) out.push_back({part, i * stride});
    w = std::move(y);
    c = exact_divide(c, w);
    ++i;
  }
  if (!c.is_one()) sff_monic(pth_root_poly(c), stride * (int)p, out);
}

// Distinct-degree split of a monic squarefree f: pairs (product of the
// irreducible factors of degree d, d).
std::vector<std::pair<GPoly, int>> ddf(const GPoly& f) {
  const GFContext* ctx = f.lc().ctx();
  mpz_class q((long)ctx->q);
  std::vector<std::pair<GPoly, int>> out;
  GPoly rest = f;
  GPoly z = GPoly::monomial(field_one(f.lc()), 1);
  GPoly h = z;
  int d = 0;
  while (!rest.is_constant() && 2 * (d + 1) <= rest.deg()) {
    ++d;
    h = poly_pow_mod(h, q, rest);
    GPoly g = poly_gcd(h - z, rest);
    if (!g.is_one()) {
      out.push_back({g, d});
      rest = exact_divide(rest, g);
      if (rest.is_constant()) break;
      h = poly_rem(h, rest);
    }
  }
  if (!rest.is_constant()) out.push_back({rest, rest.deg()});
  return out;
}

GPoly random_poly(const GFContext* ctx, int deg_bound, std::mt19937_64& rng) {
  std::vector<GFElem> c;
  c.reserve(deg_bound);
  for (int i = 0; i < deg_bound; ++i)
    c.push_back(
        gf_element_at(ctx, (long long)(rng() % (unsigned long long)ctx->q)));
  return GPoly(std::move(c));
}

// Equal-degree splitting (Cantor-Zassenhaus): f monic squarefree, every
// irreducible factor of degree d. Odd q uses a^((q^d-1)/2) - 1; char 2 uses
// the trace onto GF(2) of the splitting field GF(2^(m*d)).
void edf(const GPoly& f, int d, std::mt19937_64& rng, std::vector<GPoly>& out) {
  if (f.deg() == d) {
    out.push_back(f);
    return;
  }
  const GFContext* ctx = f.lc().ctx();
  GPoly one = GPoly::constant(field_one(f.lc()));
  GPoly split;
  while (true) {
    GPoly a = random_poly(ctx, f.deg(), rng);
    if (a.is_constant()) continue;
    GPoly g = poly_gcd(a, f);
    if (!g.is_constant() && g.deg() < f.deg()) {
      split = g;
      break;
    }
    GPoly b;
    if (ctx->p == 2) {
      GPoly t = poly_rem(a, f);
      GPoly acc = t;
      long long bits = (long long)ctx->m * d;
      for (long long i = 1; i < bits; ++i) {
        t = poly_rem(t * t, f);
        acc = acc + t;
      }
      b = acc;
    } else {
      mpz_class q((long)ctx->q), e;
      mpz_pow_ui(e.get_mpz_t(), q.get_mpz_t(), (unsigned long)d);
      e = (e - 1) / 2;
      b = poly_pow_mod(a, e, f) - one;
    }
    GPoly g2 = poly_gcd(b, f);
    if (!g2.is_constant() && g2.deg() < f.deg()) {
      split = g2;
      break;
    }
  }
  edf(split, d, rng, out);
  edf(exact_divide(f, split), d, rng, out);
}

} // namespace

std::vector<std::pair<GPoly, int>> squarefree_decomposition(const GPoly& f) {
  if (f.is_zero()) throw ArgumentError("squarefree decomposition of zero");
  std::vector<std::pair<GPoly, int>> out;
  if (f.is_constant()) return out;
  sff_monic(f.monic(), 1, out);
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.second < b.second; });
  return out;
}

FactorReport<GFElem> factor_gfq(const Poly<GFElem>& f,
                                unsigned long long seed) {
  if (f.is_zero()) throw ArgumentError("cannot factor the zero polynomial");
  FactorReport<GFElem> rep;
  rep.unit = f.lc();
  if (f.is_constant()) return rep;
  std::mt19937_64 rng(seed);
  for (const auto& [part, mult] : squarefree_decomposition(f)) {
    for (const auto& [block, d] : ddf(part)) {
      std::vector<GPoly> irr;
      edf(block, d, rng, irr);
      for (auto& h : irr) rep.terms.push_back({std::move(h), mult});
    }
  }
  std::sort(rep.terms.begin(), rep.terms.end(),
            [](const FactorTerm<GFElem>& a, const FactorTerm<GFElem>& b) {
              return a.factor < b.factor;
            });
  GPoly check = GPoly::constant(rep.unit);
  for (const auto& t : rep.terms) check = check * t.factor.pow(t.multiplicity);
  internal_check(check == f, "factor_gfq: factor product mismatch");
  return rep;
}

bool is_irreducible_gfq(const Poly<GFElem>& f) {
  if (f.is_zero() || f.is_constant()) return false;
  int n = f.deg();
  if (n == 1) return true;
  mpz_class q((long)f.lc().ctx()->q);
  GPoly fm = f.monic();
  GPoly z = GPoly::monomial(field_one(f.lc()), 1);
  GPoly h = z;
  // a proper factorization forces an irreducible factor of degree <= n/2,
  // and such a factor divides z^(q^e) - z at its degree e
  for (int e = 1; 2 * e <= n; ++e) {
    h = poly_pow_mod(h, q, fm);
    if (!poly_gcd(h - z, fm).is_one()) return false;
  }
  return true;
}

} // namespace evstab
