#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "evstab/dynamics.hpp"
#include "evstab/errors.hpp"
#include "evstab/factor.hpp"
#include "evstab/gf.hpp"
#include "evstab/poly.hpp"
#include "evstab/projpoint.hpp"
#include "evstab/rat.hpp"

namespace evstab {

namespace detail {

// Experiments factor every level; the default horizon is held tighter over Q
// where factoring dominates.
template <class K>
constexpr int experiment_degree_cap() {
  return std::is_same_v<K, Rat> ? 64 : 1024;
}

inline FactorReport<GFElem> factor_in(const Poly<GFElem>& f,
                                      unsigned long long seed) {
  return factor_gfq(f, seed);
}
inline FactorReport<Rat> factor_in(const Poly<Rat>& f,
                                   unsigned long long seed) {
  return factor_q(f, seed);
}

} // namespace detail

// One level of the factor-count sequence of P_n = f_n - alpha*g_n.
// `deficient` marks deg P_n < d^n, which happens exactly when phi^n(inf) =
// alpha; counts can then legitimately dip at the next level.
struct CountLevel {
  int n = 0;
  int degree = 0; // deg P_n after canonicalization
  int count = 0;  // r_n, irreducible factors with multiplicity
  bool deficient = false;
  std::vector<int> factor_degrees; // ascending, repeated by multiplicity
};

struct CountSequence {
  std::vector<CountLevel> levels;
  // least observed M such that r_n is constant on [M, N]; requires at least
  // two observations, otherwise absent
  std::optional<int> stabilization_index;
};

template <class K>
CountSequence factor_count_sequence(
    const RationalMap<K>& phi, const ProjPoint<K>& alpha, int N,
    unsigned long long seed = 0,
    int max_degree = detail::experiment_degree_cap<K>()) {
  if (N < 1) throw ArgumentError("factor_count_sequence: N >= 1 required");
  if (phi.degree() > max_degree)
    throw ResourceError("factor_count_sequence: map degree exceeds cap");
  CountSequence seq;
  RationalMap<K> acc = phi;
  long long nominal = 1;
  for (int n = 1; n <= N; ++n) {
    if (n > 1) acc = compose(phi, acc, max_degree);
    nominal *= phi.degree();
    Poly<K> P = preimage_of_iterate(acc, alpha);
    FactorReport<K> rep = detail::factor_in(P, seed);
    CountLevel lv;
    lv.n = n;
    lv.degree = P.deg();
    lv.count = rep.count_with_multiplicity();
    lv.deficient = lv.degree < nominal;
    for (const auto& t : rep.terms)
      for (int k = 0; k < t.multiplicity; ++k)
        lv.factor_degrees.push_back(t.factor.deg());
    seq.levels.push_back(std::move(lv));
  }
  size_t end = seq.levels.size();
  size_t s = end - 1;
  while (s > 0 && seq.levels[s - 1].count == seq.levels[end - 1].count) --s;
  if (end - s >= 2) seq.stabilization_index = seq.levels[s].n;
  return seq;
}

// Node of the preimage factor tree. The factors of the pullback of a parent
// h (the numerator of g^(deg h) * h(phi)) are its children; a degree drop at
// the previous level additionally spawns parentless copies of the factors of
// g (the branch entering through infinity).
template <class K>
struct TreeNode {
  Poly<K> factor;
  int multiplicity = 0; // in P_n
  int degree = 0;
  int parent = -1;      // index into the previous level, -1 when none
  int degree_ratio = 0; // degree / parent degree, 0 when parentless
};

template <class K>
struct TreeProfile {
  std::vector<std::vector<TreeNode<K>>> levels; // levels[i] holds level i+1
};

template <class K>
TreeProfile<K> tree_profile(const RationalMap<K>& phi,
                            const ProjPoint<K>& alpha, int N,
                            unsigned long long seed = 0,
                            int max_degree = detail::experiment_degree_cap<K>()) {
  if (N < 1) throw ArgumentError("tree_profile: N >= 1 required");
  if (phi.degree() > max_degree)
    throw ResourceError("tree_profile: map degree exceeds cap");
  TreeProfile<K> tree;
  long long d = phi.degree();

  RationalMap<K> acc = phi;
  long long nominal = d;
  FactorReport<K> rep = detail::factor_in(preimage_of_iterate(acc, alpha), seed);
  std::vector<TreeNode<K>> roots;
  for (const auto& t : rep.terms)
    roots.push_back({t.factor, t.multiplicity, t.factor.deg(), -1, 0});
  tree.levels.push_back(std::move(roots));

  FactorReport<K> gfac = detail::factor_in(canonical_poly(phi.g()), seed);

  for (int n = 1; n < N; ++n) {
    std::vector<TreeNode<K>> next;
    long long level_deg = 0;
    const auto& cur = tree.levels.back();
    for (size_t pi = 0; pi < cur.size(); ++pi) {
      const TreeNode<K>& par = cur[pi];
      level_deg += (long long)par.degree * par.multiplicity;
      Poly<K> pull = canonical_poly(
          homogeneous_compose(par.factor, phi.f(), phi.g(), par.degree));
      FactorReport<K> crep = detail::factor_in(pull, seed);
      for (const auto& t : crep.terms) {
        internal_check(t.factor.deg() % par.degree == 0,
                       "tree_profile: child degree not a parent multiple");
        int ratio = t.factor.deg() / par.degree;
        internal_check(ratio >= 1 && ratio <= d,
                       "tree_profile: degree ratio out of range");
        next.push_back({t.factor, t.multiplicity * par.multiplicity,
                        t.factor.deg(), (int)pi, ratio});
      }
    }
    long long overflow = nominal - level_deg;
    internal_check(overflow >= 0, "tree_profile: level degree exceeds d^n");
    if (overflow > 0)
      for (const auto& t : gfac.terms)
        next.push_back({t.factor, (int)(t.multiplicity * overflow),
                        t.factor.deg(), -1, 0});
    std::sort(next.begin(), next.end(),
              [](const TreeNode<K>& a, const TreeNode<K>& b) {
                return (a.factor <=> b.factor) < 0;
              });

    // the union over parents must reproduce the direct factorization
    acc = compose(phi, acc, max_degree);
    nominal *= d;
    FactorReport<K> direct =
        detail::factor_in(preimage_of_iterate(acc, alpha), seed);
    std::vector<std::pair<Poly<K>, long long>> merged, want;
    for (const auto& node : next) {
      if (!merged.empty() && merged.back().first == node.factor)
        merged.back().second += node.multiplicity;
      else
        merged.push_back({node.factor, node.multiplicity});
    }
    for (const auto& t : direct.terms) want.push_back({t.factor, t.multiplicity});
    internal_check(merged == want, "tree_profile: pullback union mismatch");

    tree.levels.push_back(std::move(next));
  }
  return tree;
}

// Parity audit on a squarefree even-degree polynomial over a finite field of
// odd characteristic: the factor count (= count without multiplicity here)
// is even exactly when the discriminant is a nonzero square. Both parities
// are returned for external comparison.
struct StickelbergerAudit {
  std::string refusal; // nonempty when a hypothesis failed
  GFElem disc;
  bool disc_is_square = false;
  int predicted_parity = 0; // 0 even, 1 odd
  int observed_parity = 0;
  int observed_count = 0;

  bool ok() const { return refusal.empty(); }
};

inline StickelbergerAudit stickelberger_audit(const Poly<GFElem>& f,
                                              unsigned long long seed = 0) {
  if (f.deg() < 1)
    throw ArgumentError("stickelberger_audit: nonconstant polynomial required");
  StickelbergerAudit audit;
  const GFContext* ctx = f.lc().ctx();
  if (ctx->p == 2) {
    audit.refusal = "odd characteristic required";
    return audit;
  }
  if (f.deg() % 2 != 0) {
    audit.refusal = "even degree required";
    return audit;
  }
  audit.disc = discriminant(f);
  if (audit.disc.is_zero()) {
    audit.refusal = "discriminant is zero (polynomial not squarefree)";
    return audit;
  }
  audit.disc_is_square = audit.disc.pow(mpz_class((long)((ctx->q - 1) / 2)))
                             .is_one(); // Euler criterion
  audit.predicted_parity = audit.disc_is_square ? 0 : 1;
  audit.observed_count = factor_gfq(f, seed).count_with_multiplicity();
  audit.observed_parity = audit.observed_count % 2;
  return audit;
}

// Finite-horizon settledness estimate: a level-n factor is stable when each
// pullback step through the horizon yields exactly one distinct irreducible
// factor; s_n is the degree*multiplicity mass fraction of stable factors.
struct SettlednessEstimate {
  int horizon = 0;
  std::vector<Rat> stable_mass; // s_n for n = 1..N-1, exact
  std::vector<std::string> warnings;
};

inline SettlednessEstimate settledness_estimate(const RationalMap<GFElem>& phi,
                                                const ProjPoint<GFElem>& alpha,
                                                int N,
                                                unsigned long long seed = 0,
                                                int max_degree = 1024) {
  if (N < 2) throw ArgumentError("settledness_estimate: N >= 2 required");
  SettlednessEstimate est;
  est.horizon = N;
  const GFContext* ctx = phi.f().lc().ctx();
  if (phi.degree() % ctx->p == 0)
    est.warnings.push_back("characteristic divides the map degree");

  TreeProfile<GFElem> tree = tree_profile(phi, alpha, N, seed, max_degree);
  int L = (int)tree.levels.size();
  std::vector<std::vector<bool>> stable((size_t)L);
  stable[L - 1].assign(tree.levels[L - 1].size(), true);
  for (int l = L - 2; l >= 0; --l) {
    std::vector<std::vector<int>> kids(tree.levels[l].size());
    for (int ci = 0; ci < (int)tree.levels[l + 1].size(); ++ci) {
      int par = tree.levels[l + 1][ci].parent;
      if (par >= 0) kids[(size_t)par].push_back(ci);
    }
    stable[l].assign(tree.levels[l].size(), false);
    for (size_t i = 0; i < tree.levels[l].size(); ++i)
      stable[l][i] = kids[i].size() == 1 && stable[l + 1][kids[i][0]];
  }
  for (int l = 0; l + 1 < L; ++l) {
    long long total = 0, mass = 0;
    for (size_t i = 0; i < tree.levels[l].size(); ++i) {
      long long w =
          (long long)tree.levels[l][i].degree * tree.levels[l][i].multiplicity;
      total += w;
      if (stable[l][i]) mass += w;
    }
    est.stable_mass.push_back(total == 0 ? Rat(1)
                                         : Rat(mpz_class((long)mass),
                                               mpz_class((long)total)));
  }
  return est;
}

// Preset families.
inline RationalMap<Rat> power_map(int d) {
  if (d < 2) throw ArgumentError("power_map: d >= 2 required");
  return RationalMap<Rat>(Poly<Rat>::monomial(Rat(1), d),
                          Poly<Rat>::constant(Rat(1)));
}

// Monic Chebyshev normalization: T_d(z + 1/z) = z^d + z^(-d).
inline RationalMap<Rat> chebyshev(int d) {
  if (d < 2) throw ArgumentError("chebyshev: d >= 2 required");
  Poly<Rat> prev = Poly<Rat>::constant(Rat(2));
  Poly<Rat> cur = Poly<Rat>::monomial(Rat(1), 1);
  Poly<Rat> z = cur;
  for (int k = 2; k <= d; ++k) {
    Poly<Rat> nxt = z * cur - prev;
    prev = std::move(cur);
    cur = std::move(nxt);
  }
  return RationalMap<Rat>(std::move(cur), Poly<Rat>::constant(Rat(1)));
}

inline RationalMap<Rat> quad_family(const Rat& a) {
  if (a.is_zero()) throw ArgumentError("quad_family: a != 0 required");
  return RationalMap<Rat>(Poly<Rat>{std::vector<Rat>{a.inv(), Rat(0), Rat(1)}},
                          Poly<Rat>::constant(Rat(1)));
}

} // namespace evstab
