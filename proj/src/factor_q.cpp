#include <algorithm>
#include <numeric>
#include <utility>
#include <vector>

#include "evstab/factor.hpp"

namespace evstab {

namespace {

// Integer polynomials, low-to-high, no trailing zeros (detail::ztrim).
using ZPoly = std::vector<mpz_class>;

int zdeg(const ZPoly& a) { return (int)a.size() - 1; }

ZPoly zmul(const ZPoly& a, const ZPoly& b) {
  if (a.empty() || b.empty()) return {};
  ZPoly r(a.size() + b.size() - 1, mpz_class(0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

ZPoly zsub(ZPoly a, const ZPoly& b) {
  if (b.size() > a.size()) a.resize(b.size(), mpz_class(0));
  for (size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  detail::ztrim(a);
  return a;
}

ZPoly zderiv(const ZPoly& a) {
  if (a.size() <= 1) return {};
  ZPoly r(a.size() - 1);
  for (size_t i = 1; i < a.size(); ++i) r[i - 1] = a[i] * (long)i;
  return r;
}

// content and sign stripped; zero stays zero
ZPoly zprimitive(ZPoly a) {
  detail::ztrim(a);
  if (a.empty()) return a;
  mpz_class g = detail::zcontent(a);
  if (sgn(a.back()) < 0) g = -g;
  for (auto& c : a) c /= g;
  return a;
}

// primitive positive-lc gcd via a primitive pseudo-remainder sequence
ZPoly zgcd(ZPoly a, ZPoly b) {
  a = zprimitive(std::move(a));
  b = zprimitive(std::move(b));
  if (a.empty()) return b;
  if (b.empty()) return a;
  if (a.size() < b.size()) std::swap(a, b);
  while (!b.empty()) {
    ZPoly r = zprimitive(detail::zprem(a, b));
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

// exact division in Z[x]; divisibility is checked, not assumed
ZPoly zdivexact(ZPoly a, const ZPoly& b) {
  internal_check(!b.empty(), "zdivexact: zero divisor");
  detail::ztrim(a);
  if (a.empty()) return {};
  internal_check(a.size() >= b.size(), "zdivexact: degree mismatch");
  ZPoly q(a.size() - b.size() + 1);
  for (int k = (int)q.size() - 1; k >= 0; --k) {
    mpz_class c, r;
    mpz_tdiv_qr(c.get_mpz_t(), r.get_mpz_t(),
                a[k + b.size() - 1].get_mpz_t(), b.back().get_mpz_t());
    internal_check(r == 0, "zdivexact: inexact division");
    q[k] = c;
    for (size_t j = 0; j < b.size(); ++j) a[k + j] -= c * b[j];
  }
  detail::ztrim(a);
  internal_check(a.empty(), "zdivexact: nonzero remainder");
  return q;
}

bool ztry_divide(const ZPoly& a, const ZPoly& b, ZPoly& quot) {
  if (b.empty() || a.size() < b.size()) return false;
  ZPoly rem = a;
  ZPoly q(rem.size() - b.size() + 1);
  for (int k = (int)q.size() - 1; k >= 0; --k) {
    mpz_class c, r;
    mpz_tdiv_qr(c.get_mpz_t(), r.get_mpz_t(),
                rem[k + b.size() - 1].get_mpz_t(), b.back().get_mpz_t());
    if (r != 0) return false;
    q[k] = c;
    for (size_t j = 0; j < b.size(); ++j) rem[k + j] -= c * b[j];
  }
  detail::ztrim(rem);
  if (!rem.empty()) return false;
  quot = std::move(q);
  return true;
}

// Yun's squarefree decomposition of a primitive positive-lc polynomial:
// f = prod g_i^i with the g_i primitive, positive-lc and pairwise coprime.
std::vector<std::pair<ZPoly, int>> yun(const ZPoly& f) {
  std::vector<std::pair<ZPoly, int>> out;
  ZPoly df = zderiv(f);
  ZPoly g = zgcd(f, df);
  if (zdeg(g) == 0) {
    out.push_back({f, 1});
    return out;
  }
  ZPoly w = zdivexact(f, g);
  ZPoly y = zdivexact(df, g);
  ZPoly z = zsub(y, zderiv(w));
  int i = 1;
  while (zdeg(w) > 0) {
    ZPoly h = zgcd(w, z);
    if (zdeg(h) > 0) out.push_back({h, i});
    w = zdivexact(w, h);
    y = zdivexact(z, h);
    z = zsub(y, zderiv(w));
    ++i;
  }
  return out;
}

Poly<GFElem> to_gf(const ZPoly& a, const GFContext* ctx) {
  std::vector<GFElem> c;
  c.reserve(a.size());
  for (const auto& x : a) {
    mpz_class r = x % mpz_class((long)ctx->p);
    c.push_back(GFElem(ctx, r.get_si()));
  }
  return Poly<GFElem>(std::move(c));
}

ZPoly from_gf(const Poly<GFElem>& f) {
  if (f.is_zero()) return {};
  ZPoly r(f.deg() + 1);
  for (size_t i = 0; i < r.size(); ++i)
    r[i] = mpz_class((long)f.coeff((int)i).constant_coeff());
  return r;
}

Poly<Rat> to_rat(const ZPoly& a) {
  std::vector<Rat> c(a.size());
  for (size_t i = 0; i < a.size(); ++i) c[i] = Rat(a[i]);
  return Poly<Rat>(std::move(c));
}

ZPoly from_rat_int(const Poly<Rat>& f) {
  if (f.is_zero()) return {};
  ZPoly r(f.deg() + 1);
  for (size_t i = 0; i < r.size(); ++i) {
    const Rat c = f.coeff((int)i);
    internal_check(c.is_integer(), "from_rat_int: non-integer coefficient");
    r[i] = c.num();
  }
  return r;
}

bool good_prime(const ZPoly& g, long long p) {
  if (g.back() % (long)p == 0) return false;
  const GFContext* ctx = gf_construct(p, 1);
  Poly<GFElem> gb = to_gf(g, ctx);
  return poly_gcd(gb, gb.derivative()).is_one();
}

// Achievable factor degrees mod one prime: subset sums of the modular factor
// degrees (with multiplicity).
std::vector<char> degree_sums(const FactorReport<GFElem>& rep, int d) {
  std::vector<char> dp(d + 1, 0);
  dp[0] = 1;
  for (const auto& t : rep.terms)
    for (int k = 0; k < t.multiplicity; ++k)
      for (int s = d - t.factor.deg(); s >= 0; --s)
        if (dp[s]) dp[s + t.factor.deg()] = 1;
  return dp;
}

// ---- arithmetic mod M (coefficients held in [0, M)) ----

mpz_class zm_mod(const mpz_class& c, const mpz_class& M) {
  mpz_class r;
  mpz_fdiv_r(r.get_mpz_t(), c.get_mpz_t(), M.get_mpz_t());
  return r;
}

ZPoly zm_reduce(ZPoly a, const mpz_class& M) {
  for (auto& c : a) c = zm_mod(c, M);
  detail::ztrim(a);
  return a;
}

ZPoly zm_mul(const ZPoly& a, const ZPoly& b, const mpz_class& M) {
  return zm_reduce(zmul(a, b), M);
}

ZPoly zm_add(ZPoly a, const ZPoly& b, const mpz_class& M) {
  if (b.size() > a.size()) a.resize(b.size(), mpz_class(0));
  for (size_t i = 0; i < b.size(); ++i) a[i] = zm_mod(a[i] + b[i], M);
  detail::ztrim(a);
  return a;
}

ZPoly zm_sub(ZPoly a, const ZPoly& b, const mpz_class& M) {
  if (b.size() > a.size()) a.resize(b.size(), mpz_class(0));
  for (size_t i = 0; i < b.size(); ++i) a[i] = zm_mod(a[i] - b[i], M);
  detail::ztrim(a);
  return a;
}

// division by a monic divisor mod M
void zm_divrem(const ZPoly& a, const ZPoly& b, const mpz_class& M, ZPoly& q,
               ZPoly& r) {
  internal_check(!b.empty() && b.back() == 1, "zm_divrem: divisor not monic");
  r = a;
  if (r.size() < b.size()) {
    q.clear();
    return;
  }
  q.assign(r.size() - b.size() + 1, mpz_class(0));
  for (int k = (int)q.size() - 1; k >= 0; --k) {
    mpz_class c = r[k + b.size() - 1];
    if (c == 0) continue;
    q[k] = c;
    for (size_t j = 0; j < b.size(); ++j)
      r[k + j] = zm_mod(r[k + j] - c * b[j], M);
  }
  detail::ztrim(r);
}

ZPoly zsym(ZPoly a, const mpz_class& M) {
  for (auto& c : a)
    if (c * 2 > M) c -= M;
  detail::ztrim(a);
  return a;
}

// ---- quadratic Hensel lifting over a factor tree ----

struct SplitNode {
  int left = -1, right = -1; // child node index, or -1 when the side is a leaf
  size_t lo = 0, mid = 0, hi = 0;
  ZPoly g, h, s, t; // f ~ g*h with s*g + t*h ~ 1 at the current modulus
};

// One Hensel step: lifts (g, h, s, t) from modulus m to m2 = m^2 against the
// target f (f ~ g*h mod m, everything monic, deg s < deg h, deg t < deg g).
void hensel_step(const ZPoly& f, SplitNode& n, const mpz_class& m2) {
  ZPoly fr = zm_reduce(f, m2);
  ZPoly e = zm_sub(fr, zm_mul(n.g, n.h, m2), m2);
  ZPoly q, r;
  zm_divrem(zm_mul(n.s, e, m2), n.h, m2, q, r);
  ZPoly g1 = zm_add(zm_add(n.g, zm_mul(n.t, e, m2), m2), zm_mul(q, n.g, m2), m2);
  ZPoly h1 = zm_add(n.h, r, m2);
  ZPoly one{mpz_class(1)};
  ZPoly b =
      zm_sub(zm_add(zm_mul(n.s, g1, m2), zm_mul(n.t, h1, m2), m2), one, m2);
  ZPoly c, d;
  zm_divrem(zm_mul(n.s, b, m2), h1, m2, c, d);
  ZPoly s1 = zm_sub(n.s, d, m2);
  ZPoly t1 = zm_sub(zm_sub(n.t, zm_mul(n.t, b, m2), m2), zm_mul(c, g1, m2), m2);
  internal_check(!g1.empty() && g1.back() == 1 && zdeg(g1) == zdeg(n.g),
                 "hensel_step: left lift degenerated");
  internal_check(!h1.empty() && h1.back() == 1 && zdeg(h1) == zdeg(n.h),
                 "hensel_step: right lift degenerated");
  n.g = std::move(g1);
  n.h = std::move(h1);
  n.s = std::move(s1);
  n.t = std::move(t1);
}

int build_tree(std::vector<SplitNode>& ns,
               const std::vector<Poly<GFElem>>& parts, size_t lo, size_t hi) {
  if (hi - lo <= 1) return -1;
  size_t mid = (lo + hi) / 2;
  Poly<GFElem> gp = Poly<GFElem>::constant(field_one(parts[lo].lc()));
  Poly<GFElem> hp = gp;
  for (size_t i = lo; i < mid; ++i) gp = gp * parts[i];
  for (size_t i = mid; i < hi; ++i) hp = hp * parts[i];
  auto [d, s0, t0] = poly_xgcd(gp, hp);
  internal_check(d.is_one(), "hensel: modular parts not coprime");
  s0 = poly_rem(s0, hp);
  Poly<GFElem> one = Poly<GFElem>::constant(field_one(gp.lc()));
  t0 = exact_divide(one - s0 * gp, hp);
  int idx = (int)ns.size();
  ns.push_back(SplitNode{});
  ns[idx].lo = lo;
  ns[idx].mid = mid;
  ns[idx].hi = hi;
  ns[idx].g = from_gf(gp);
  ns[idx].h = from_gf(hp);
  ns[idx].s = from_gf(s0);
  ns[idx].t = from_gf(t0);
  int l = build_tree(ns, parts, lo, mid);
  int r = build_tree(ns, parts, mid, hi);
  ns[idx].left = l;
  ns[idx].right = r;
  return idx;
}

// One modulus-doubling round over the whole tree, parents first so each child
// lifts against its parent's freshly lifted side.
void lift_round(std::vector<SplitNode>& ns, int idx, const ZPoly& target,
                const mpz_class& m2) {
  if (idx < 0) return;
  hensel_step(target, ns[idx], m2);
  lift_round(ns, ns[idx].left, ns[idx].g, m2);
  lift_round(ns, ns[idx].right, ns[idx].h, m2);
}

void collect_leaves(const std::vector<SplitNode>& ns, int idx,
                    const ZPoly& target, const mpz_class& M,
                    std::vector<ZPoly>& out) {
  if (idx < 0) {
    out.push_back(zm_reduce(target, M));
    return;
  }
  collect_leaves(ns, ns[idx].left, ns[idx].g, M, out);
  collect_leaves(ns, ns[idx].right, ns[idx].h, M, out);
}

// Zassenhaus: factor a squarefree primitive positive-lc G of degree >= 1 into
// primitive positive-lc irreducibles.
std::vector<ZPoly> factor_squarefree_primitive(ZPoly G,
                                               unsigned long long seed) {
  std::vector<ZPoly> out;
  detail::ztrim(G);
  internal_check(zdeg(G) >= 1, "factor_squarefree_primitive: constant input");
  if (G[0] == 0) { // squarefree, so the root at zero is simple
    out.push_back(ZPoly{mpz_class(0), mpz_class(1)});
    G.erase(G.begin());
  }
  if (zdeg(G) == 0) return out;
  if (zdeg(G) == 1) {
    out.push_back(std::move(G));
    return out;
  }
  const int d = zdeg(G);

  // three good primes; a true factor degree must be achievable modulo all
  std::vector<long long> primes;
  std::vector<int> prime_factor_count;
  std::vector<char> allowed(d + 1, 1);
  mpz_class pz = 2;
  while (primes.size() < 3) {
    mpz_nextprime(pz.get_mpz_t(), pz.get_mpz_t());
    long long p = pz.get_si();
    if (!good_prime(G, p)) continue;
    primes.push_back(p);
    FactorReport<GFElem> rep = factor_gfq(to_gf(G, gf_construct(p, 1)), seed);
    prime_factor_count.push_back(rep.count_with_multiplicity());
    std::vector<char> dp = degree_sums(rep, d);
    for (int s = 0; s <= d; ++s) allowed[s] = allowed[s] && dp[s];
  }
  bool trivial_only = true;
  for (int s = 1; s < d; ++s)
    if (allowed[s]) {
      trivial_only = false;
      break;
    }
  if (trivial_only) {
    out.push_back(std::move(G));
    return out;
  }
  size_t best = 0;
  for (size_t i = 1; i < primes.size(); ++i)
    if (prime_factor_count[i] < prime_factor_count[best]) best = i;
  const long long p = primes[best];

  // monicize: F(x) = L^(d-1) G(x/L) is monic over Z; factors map back via
  // H(x) -> primitive part of H(L x)
  const mpz_class L = G.back();
  ZPoly F(d + 1);
  F[d] = 1;
  mpz_class pw = 1;
  for (int i = d - 1; i >= 0; --i) {
    F[i] = G[i] * pw;
    pw *= L;
  }

  const GFContext* ctx = gf_construct(p, 1);
  FactorReport<GFElem> fb = factor_gfq(to_gf(F, ctx), seed);
  std::vector<Poly<GFElem>> base;
  for (auto& t : fb.terms) {
    internal_check(t.multiplicity == 1, "factor_q: image not squarefree");
    base.push_back(std::move(t.factor));
  }

  std::vector<ZPoly> monic_factors;
  if (base.size() == 1) {
    monic_factors.push_back(F);
  } else {
    // coefficients of any monic factor of F stay below 2^d * |F|_2, so lift
    // past twice that and recover factors from symmetric residues
    mpz_class n2 = 0;
    for (const auto& c : F) n2 += c * c;
    mpz_class bound = (mpz_class(1) << (unsigned)(d + 1)) * (sqrt(n2) + 1);
    mpz_class M((long)p);
    while (M <= bound) M *= (long)p;

    std::vector<SplitNode> tree;
    int root = build_tree(tree, base, 0, base.size());
    mpz_class m((long)p);
    while (m < M) {
      mpz_class m2 = m * m;
      lift_round(tree, root, F, m2);
      m = m2;
    }
    std::vector<ZPoly> lifted;
    collect_leaves(tree, root, zm_reduce(F, M), M, lifted);

    // recombination: scan subsets by cardinality; an exact division certifies
    // a factor, and minimal-cardinality hits are irreducible
    std::vector<size_t> live(lifted.size());
    std::iota(live.begin(), live.end(), (size_t)0);
    ZPoly rem_poly = F;
    size_t card = 1;
    while (2 * card <= live.size()) {
      std::vector<size_t> pos(card);
      std::iota(pos.begin(), pos.end(), (size_t)0);
      bool hit = false;
      while (true) {
        int degsum = 0;
        for (size_t j : pos) degsum += zdeg(lifted[live[j]]);
        if (degsum <= d && allowed[degsum]) {
          ZPoly C{mpz_class(1)};
          for (size_t j : pos) C = zm_mul(C, lifted[live[j]], M);
          C = zsym(C, M);
          bool plausible = true;
          if (rem_poly[0] != 0 && (C[0] == 0 || rem_poly[0] % C[0] != 0))
            plausible = false;
          ZPoly quot;
          if (plausible && ztry_divide(rem_poly, C, quot)) {
            monic_factors.push_back(C);
            rem_poly = std::move(quot);
            for (auto it = pos.rbegin(); it != pos.rend(); ++it)
              live.erase(live.begin() + (long)*it);
            hit = true;
            break;
          }
        }
        size_t k = card;
        while (k > 0 && pos[k - 1] == live.size() - card + (k - 1)) --k;
        if (k == 0) break;
        ++pos[k - 1];
        for (size_t j = k; j < card; ++j) pos[j] = pos[j - 1] + 1;
      }
      if (!hit) ++card;
    }
    if (zdeg(rem_poly) > 0) monic_factors.push_back(std::move(rem_poly));
  }

  for (const auto& H : monic_factors) {
    ZPoly GH(H.size());
    mpz_class lp = 1;
    for (size_t i = 0; i < H.size(); ++i) {
      GH[i] = H[i] * lp;
      lp *= L;
    }
    out.push_back(zprimitive(std::move(GH)));
  }
  return out;
}

} // namespace

std::vector<std::pair<Poly<Rat>, int>> squarefree_decomposition(
    const Poly<Rat>& f) {
  if (f.is_zero()) throw ArgumentError("squarefree decomposition of zero");
  std::vector<std::pair<Poly<Rat>, int>> out;
  if (f.is_constant()) return out;
  auto [content, prim] = content_primitive(f);
  (void)content;
  for (const auto& [g, e] : yun(from_rat_int(prim)))
    out.push_back({to_rat(g), e});
  return out;
}

FactorReport<Rat> factor_q(const Poly<Rat>& f, unsigned long long seed) {
  if (f.is_zero()) throw ArgumentError("cannot factor the zero polynomial");
  FactorReport<Rat> rep;
  auto [content, prim] = content_primitive(f);
  rep.unit = content;
  if (f.is_constant()) return rep;
  for (const auto& [g, mult] : yun(from_rat_int(prim))) {
    for (auto& h : factor_squarefree_primitive(g, seed))
      rep.terms.push_back({to_rat(h), mult});
  }
  std::sort(rep.terms.begin(), rep.terms.end(),
            [](const FactorTerm<Rat>& a, const FactorTerm<Rat>& b) {
              return a.factor < b.factor;
            });
  Poly<Rat> check = Poly<Rat>::constant(rep.unit);
  for (const auto& t : rep.terms) check = check * t.factor.pow(t.multiplicity);
  internal_check(check == f, "factor_q: factor product mismatch");
  return rep;
}

bool is_irreducible_q(const Poly<Rat>& f) {
  if (f.is_zero() || f.is_constant()) return false;
  if (f.deg() == 1) return true;
  return factor_q(f).count_with_multiplicity() == 1;
}

} // namespace evstab
