#pragma once

#include <utility>
#include <vector>

#include "evstab/gf.hpp"
#include "evstab/poly.hpp"
#include "evstab/rat.hpp"

namespace evstab {

template <typename K>
struct FactorTerm {
  Poly<K> factor;
  int multiplicity = 0;
};

// Complete factorization: unit * prod factor^multiplicity == input. Factors
// are irreducible and canonical (monic over a finite field; primitive integer
// coefficients with positive leading coefficient over Q), listed by degree
// and then by coefficient tuple.
template <typename K>
struct FactorReport {
  K unit;
  std::vector<FactorTerm<K>> terms;

  int count_with_multiplicity() const {
    int n = 0;
    for (const auto& t : terms) n += t.multiplicity;
    return n;
  }
  int count_distinct() const { return (int)terms.size(); }
};

// f = lc(f) * prod g_i^(e_i) with the g_i squarefree, monic, pairwise coprime
// and the e_i distinct (finite fields), resp. f = c * prod g_i^(e_i) with
// primitive positive-lc g_i over Q.
std::vector<std::pair<Poly<GFElem>, int>> squarefree_decomposition(
    const Poly<GFElem>& f);
std::vector<std::pair<Poly<Rat>, int>> squarefree_decomposition(
    const Poly<Rat>& f);

FactorReport<GFElem> factor_gfq(const Poly<GFElem>& f,
                                unsigned long long seed = 0);
FactorReport<Rat> factor_q(const Poly<Rat>& f, unsigned long long seed = 0);

bool is_irreducible_gfq(const Poly<GFElem>& f);
bool is_irreducible_q(const Poly<Rat>& f);

} // namespace evstab
