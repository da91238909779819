#pragma once

#include <random>
#include <vector>

#include "evstab/funcfield.hpp"
#include "evstab/gf.hpp"
#include "evstab/poly.hpp"
#include "evstab/rat.hpp"

namespace evtest {

using namespace evstab;

inline Poly<Rat> qpoly(std::vector<long long> coeffs) {
  std::vector<Rat> v;
  for (auto c : coeffs) v.emplace_back(c);
  return Poly<Rat>(std::move(v));
}

inline Poly<Rat> qpoly_frac(std::vector<std::pair<long long, long long>> coeffs) {
  std::vector<Rat> v;
  for (auto [n, d] : coeffs) v.emplace_back(mpz_class((long)n), mpz_class((long)d));
  return Poly<Rat>(std::move(v));
}

inline Poly<GFElem> gfpoly(const GFContext* ctx, std::vector<long long> coeffs) {
  std::vector<GFElem> v;
  for (auto c : coeffs) v.emplace_back(ctx, c);
  return Poly<GFElem>(std::move(v));
}

inline Rat rand_rat(std::mt19937_64& rng, long long span = 40) {
  long long n = (long long)(rng() % (2 * span + 1)) - span;
  long long d = 1 + (long long)(rng() % span);
  return Rat(mpz_class((long)n), mpz_class((long)d));
}

inline Poly<Rat> rand_qpoly(std::mt19937_64& rng, int maxdeg, long long span = 20) {
  int d = (int)(rng() % (maxdeg + 1));
  std::vector<Rat> v;
  for (int i = 0; i <= d; ++i)
    v.emplace_back(mpz_class((long)((long long)(rng() % (2 * span + 1)) - span)));
  return Poly<Rat>(std::move(v));
}

inline Poly<GFElem> rand_gfpoly(std::mt19937_64& rng, const GFContext* ctx,
                                int deg, bool monic = true) {
  std::vector<GFElem> v;
  for (int i = 0; i < deg; ++i)
    v.push_back(gf_element_at(ctx, (long long)(rng() % ctx->q)));
  if (monic) {
    v.emplace_back(ctx, 1);
  } else {
    GFElem lc(ctx, 0);
    while (lc.is_zero()) lc = gf_element_at(ctx, (long long)(rng() % ctx->q));
    v.push_back(lc);
  }
  return Poly<GFElem>(std::move(v));
}

} // namespace evtest
