#include "evstab/poly.hpp"

#include <random>
#include <tuple>
#include <vector>

#include "doctest.h"
#include "evstab/funcfield.hpp"
#include "evstab/gf.hpp"
#include "evstab/rat.hpp"
#include "helpers.hpp"

using namespace evstab;

namespace {

// Sylvester-matrix determinant by exact Gaussian elimination, as an
// independent oracle for the subresultant implementation
template <class K>
K sylvester_det(const Poly<K>& f, const Poly<K>& g) {
  int m = f.deg(), n = g.deg();
  int size = m + n;
  K zero = field_zero(f.lc());
  K one = field_one(f.lc());
  if (size == 0) return one;
  std::vector<std::vector<K>> a((size_t)size, std::vector<K>((size_t)size, zero));
  for (int r = 0; r < n; ++r)
    for (int i = 0; i <= m; ++i) a[(size_t)r][(size_t)(r + i)] = f.coeff(m - i);
  for (int r = 0; r < m; ++r)
    for (int i = 0; i <= n; ++i)
      a[(size_t)(n + r)][(size_t)(r + i)] = g.coeff(n - i);
  K det = one;
  for (int col = 0; col < size; ++col) {
    int piv = -1;
    for (int r = col; r < size; ++r)
      if (!a[(size_t)r][(size_t)col].is_zero()) {
        piv = r;
        break;
      }
    if (piv < 0) return zero;
    if (piv != col) {
      std::swap(a[(size_t)piv], a[(size_t)col]);
      det = -det;
    }
    det = det * a[(size_t)col][(size_t)col];
    K inv = a[(size_t)col][(size_t)col].inv();
    for (int r = col + 1; r < size; ++r) {
      if (a[(size_t)r][(size_t)col].is_zero()) continue;
      K factor = a[(size_t)r][(size_t)col] * inv;
      for (int c2 = col; c2 < size; ++c2)
        a[(size_t)r][(size_t)c2] =
            a[(size_t)r][(size_t)c2] - factor * a[(size_t)col][(size_t)c2];
    }
  }
  return det;
}

Poly<Rat> rand_nonzero_qpoly(std::mt19937_64& rng, int maxdeg) {
  for (;;) {
    Poly<Rat> f = evtest::rand_qpoly(rng, maxdeg);
    if (!f.is_zero()) return f;
  }
}

} // namespace

TEST_SUITE("poly") {

TEST_CASE("resultant matches the Sylvester determinant") {
  std::mt19937_64 rng(7);
  CHECK(resultant(evtest::qpoly({-3, 1}), evtest::qpoly({-5, 1})) == Rat(-2));
  for (int trial = 0; trial < 120; ++trial) {
    Poly<Rat> f = rand_nonzero_qpoly(rng, 5);
    Poly<Rat> g = rand_nonzero_qpoly(rng, 4);
    if (f.deg() + g.deg() == 0) continue;
    CHECK(resultant(f, g) == sylvester_det(f, g));
  }
  const GFContext* f7 = gf_construct(7, 1);
  const GFContext* f4 = gf_construct(2, 2);
  for (int trial = 0; trial < 120; ++trial) {
    Poly<GFElem> f = evtest::rand_gfpoly(rng, f7, 1 + (int)(rng() % 5), false);
    Poly<GFElem> g = evtest::rand_gfpoly(rng, f7, 1 + (int)(rng() % 4), false);
    CHECK(resultant(f, g) == sylvester_det(f, g));
  }
  for (int trial = 0; trial < 60; ++trial) {
    Poly<GFElem> f = evtest::rand_gfpoly(rng, f4, 1 + (int)(rng() % 4), false);
    Poly<GFElem> g = evtest::rand_gfpoly(rng, f4, 1 + (int)(rng() % 3), false);
    CHECK(resultant(f, g) == sylvester_det(f, g));
  }
}

TEST_CASE("resultant algebraic laws") {
  std::mt19937_64 rng(11);
  const GFContext* f5 = gf_construct(5, 1);
  for (int trial = 0; trial < 60; ++trial) {
    Poly<Rat> f = rand_nonzero_qpoly(rng, 4);
    Poly<Rat> g = rand_nonzero_qpoly(rng, 3);
    Poly<Rat> h = rand_nonzero_qpoly(rng, 3);
    CHECK(resultant(f, g * h) == resultant(f, g) * resultant(f, h));
    if (f.deg() > 0 || g.deg() > 0) {
      Rat swap = resultant(g, f);
      Rat want = resultant(f, g);
      if ((f.deg() * g.deg()) % 2 == 1) want = -want;
      CHECK(swap == want);
    }
  }
  // constant convention and padding
  Poly<Rat> f = evtest::qpoly({1, 4, 0, 2});
  CHECK(resultant(f, evtest::qpoly({3})) == Rat(27));
  CHECK(resultant_padded(f, evtest::qpoly({3}), 3) == Rat(27 * 8));
  CHECK(resultant_padded(f, evtest::qpoly({3}), 5) == Rat(0));
  Poly<GFElem> a = evtest::gfpoly(f5, {2, 0, 1});
  Poly<GFElem> b = evtest::gfpoly(f5, {1, 3});
  CHECK(resultant_padded(a, b, 2) == resultant(a, b) * a.lc());
  CHECK_THROWS_AS(resultant(Poly<Rat>(), Poly<Rat>()), ArgumentError);
}

TEST_CASE("divrem roundtrip") {
  std::mt19937_64 rng(13);
  const GFContext* f9 = gf_construct(3, 2);
  for (int trial = 0; trial < 150; ++trial) {
    Poly<Rat> a = evtest::rand_qpoly(rng, 6);
    Poly<Rat> b = rand_nonzero_qpoly(rng, 4);
    auto [q, r] = divrem(a, b);
    CHECK(q * b + r == a);
    CHECK((r.is_zero() || r.deg() < b.deg()));
  }
  for (int trial = 0; trial < 150; ++trial) {
    Poly<GFElem> a = evtest::rand_gfpoly(rng, f9, (int)(rng() % 7), false);
    Poly<GFElem> b = evtest::rand_gfpoly(rng, f9, (int)(rng() % 4), false);
    auto [q, r] = divrem(a, b);
    CHECK(q * b + r == a);
    CHECK((r.is_zero() || r.deg() < b.deg()));
  }
  CHECK_THROWS_AS(divrem(evtest::qpoly({1, 1}), Poly<Rat>()), ArgumentError);
  auto [q0, r0] = divrem(evtest::qpoly({1, 1}), evtest::qpoly({0, 0, 1}));
  CHECK(q0.is_zero());
  CHECK(r0 == evtest::qpoly({1, 1}));
}

TEST_CASE("gcd is monic and scale-invariant") {
  std::mt19937_64 rng(17);
  const GFContext* f7 = gf_construct(7, 1);
  for (int trial = 0; trial < 80; ++trial) {
    Poly<Rat> f = rand_nonzero_qpoly(rng, 3);
    Poly<Rat> g = rand_nonzero_qpoly(rng, 3);
    Poly<Rat> h = rand_nonzero_qpoly(rng, 2);
    Poly<Rat> d = poly_gcd(f, g);
    CHECK(d.is_monic());
    CHECK(poly_rem(f, d).is_zero());
    CHECK(poly_rem(g, d).is_zero());
    CHECK(poly_gcd(f * h, g * h) == (poly_gcd(f, g) * h).monic());
    CHECK(poly_gcd(f.scaled(Rat(-6)), g.scaled(Rat(mpz_class(2), mpz_class(3)))) == d);
  }
  for (int trial = 0; trial < 80; ++trial) {
    Poly<GFElem> f = evtest::rand_gfpoly(rng, f7, 1 + (int)(rng() % 3), false);
    Poly<GFElem> g = evtest::rand_gfpoly(rng, f7, 1 + (int)(rng() % 3), false);
    Poly<GFElem> d = poly_gcd(f, g);
    CHECK(d.is_monic());
    CHECK(poly_rem(f, d).is_zero());
    CHECK(poly_rem(g, d).is_zero());
  }
  CHECK(poly_gcd(Poly<Rat>(), evtest::qpoly({0, 2})).is_monic());
  CHECK(poly_gcd(Poly<Rat>(), evtest::qpoly({0, 2})) == evtest::qpoly({0, 1}));
}

TEST_CASE("extended gcd bezout identity") {
  std::mt19937_64 rng(19);
  const GFContext* f4 = gf_construct(2, 2);
  for (int trial = 0; trial < 60; ++trial) {
    Poly<Rat> a = rand_nonzero_qpoly(rng, 4);
    Poly<Rat> b = rand_nonzero_qpoly(rng, 3);
    auto [g, s, t] = poly_xgcd(a, b);
    CHECK(s * a + t * b == g);
    CHECK(g == poly_gcd(a, b));
  }
  for (int trial = 0; trial < 60; ++trial) {
    Poly<GFElem> a = evtest::rand_gfpoly(rng, f4, 1 + (int)(rng() % 4), false);
    Poly<GFElem> b = evtest::rand_gfpoly(rng, f4, 1 + (int)(rng() % 3), false);
    auto [g, s, t] = poly_xgcd(a, b);
    CHECK(s * a + t * b == g);
    CHECK(g == poly_gcd(a, b));
  }
}

TEST_CASE("composition against the naive expansion") {
  std::mt19937_64 rng(23);
  const GFContext* f5 = gf_construct(5, 1);
  for (int trial = 0; trial < 50; ++trial) {
    Poly<Rat> h = evtest::rand_qpoly(rng, 4);
    Poly<Rat> u = evtest::rand_qpoly(rng, 3);
    Poly<Rat> naive;
    Poly<Rat> upow = Poly<Rat>::constant(Rat(1));
    for (int i = 0; i <= h.deg() || (h.is_zero() && i == 0); ++i) {
      naive = naive + upow.scaled(h.coeff(i));
      upow = upow * u;
    }
    CHECK(compose(h, u) == naive);
  }
  Poly<Rat> z = evtest::qpoly({0, 1});
  Poly<Rat> h = evtest::qpoly({3, -1, 0, 2});
  CHECK(compose(h, z) == h);

  for (int trial = 0; trial < 50; ++trial) {
    Poly<GFElem> hh = evtest::rand_gfpoly(rng, f5, 1 + (int)(rng() % 4), false);
    Poly<GFElem> u = evtest::rand_gfpoly(rng, f5, 1 + (int)(rng() % 3), false);
    Poly<GFElem> w = evtest::rand_gfpoly(rng, f5, (int)(rng() % 3), false);
    int D = hh.deg() + (int)(rng() % 2);
    // homogeneous_compose(h, u, w, D) = sum h_i u^i w^(D-i)
    Poly<GFElem> naive;
    for (int i = 0; i <= hh.deg(); ++i) {
      Poly<GFElem> term = Poly<GFElem>::constant(hh.coeff(i));
      for (int k = 0; k < i; ++k) term = term * u;
      for (int k = 0; k < D - i; ++k) term = term * w;
      naive = naive + term;
    }
    CHECK(homogeneous_compose(hh, u, w, D) == naive);
  }
}

TEST_CASE("power mod") {
  std::mt19937_64 rng(29);
  const GFContext* f7 = gf_construct(7, 1);
  for (int trial = 0; trial < 40; ++trial) {
    Poly<GFElem> base = evtest::rand_gfpoly(rng, f7, (int)(rng() % 5), false);
    Poly<GFElem> mod = evtest::rand_gfpoly(rng, f7, 2 + (int)(rng() % 3), true);
    int e = (int)(rng() % 30);
    Poly<GFElem> naive = Poly<GFElem>::constant(GFElem(f7, 1));
    for (int i = 0; i < e; ++i) naive = poly_rem(naive * base, mod);
    CHECK(poly_pow_mod(base, mpz_class(e), mod) == naive);
  }
}

TEST_CASE("reciprocal and content") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 60; ++trial) {
    Poly<Rat> f = rand_nonzero_qpoly(rng, 5);
    if (f.coeff(0).is_zero()) continue;
    CHECK(f.reciprocal().reciprocal() == f);
    Poly<Rat> g = rand_nonzero_qpoly(rng, 4);
    if (g.coeff(0).is_zero()) continue;
    CHECK((f * g).reciprocal() == f.reciprocal() * g.reciprocal());
  }
  CHECK(evtest::qpoly({1, 2, 3}).reciprocal() == evtest::qpoly({3, 2, 1}));

  for (int trial = 0; trial < 60; ++trial) {
    Poly<Rat> f = rand_nonzero_qpoly(rng, 5);
    auto [content, prim] = content_primitive(f);
    CHECK(prim.scaled(content) == f);
    CHECK(!content.is_zero());
    mpz_class g = 0;
    for (int i = 0; i <= prim.deg(); ++i) {
      CHECK(prim.coeff(i).den() == 1);
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), prim.coeff(i).num().get_mpz_t());
    }
    CHECK(g == 1);
    CHECK(prim.lc() > Rat(0));
  }
}

TEST_CASE("discriminant formulas and reduction") {
  std::mt19937_64 rng(37);
  // quadratic: b^2 - 4c
  for (int trial = 0; trial < 40; ++trial) {
    Rat b = evtest::rand_rat(rng), c = evtest::rand_rat(rng);
    Poly<Rat> f(std::vector<Rat>{c, b, Rat(1)});
    CHECK(discriminant(f) == b * b - Rat(4) * c);
  }
  // cubic with known roots: prod of squared root differences
  for (int trial = 0; trial < 30; ++trial) {
    Rat r1 = evtest::rand_rat(rng), r2 = evtest::rand_rat(rng),
        r3 = evtest::rand_rat(rng);
    Poly<Rat> f = Poly<Rat>(std::vector<Rat>{-r1, Rat(1)}) *
                  Poly<Rat>(std::vector<Rat>{-r2, Rat(1)}) *
                  Poly<Rat>(std::vector<Rat>{-r3, Rat(1)});
    Rat want = (r1 - r2) * (r2 - r3) * (r1 - r3);
    want = want * want;
    CHECK(discriminant(f) == want);
  }
  // the universal discriminant commutes with reduction mod p, including when
  // the derivative drops degree in char p
  for (long long p : {3LL, 5LL}) {
    const GFContext* ctx = gf_construct(p, 1);
    for (int trial = 0; trial < 120; ++trial) {
      int deg = 2 + (int)(rng() % 5);
      std::vector<Rat> c;
      for (int i = 0; i < deg; ++i)
        c.emplace_back((long long)(rng() % 19) - 9);
      long long lc = (long long)(rng() % 19) - 9;
      if (lc % p == 0) ++lc;
      c.emplace_back(lc);
      Poly<Rat> f(c);
      std::vector<GFElem> cr;
      for (int i = 0; i <= f.deg(); ++i) {
        mpz_class m = f.coeff(i).num() % (long)p;
        cr.emplace_back(ctx, m.get_si());
      }
      Poly<GFElem> fr(cr);
      REQUIRE(fr.deg() == f.deg());
      Rat dq = discriminant(f);
      CHECK(dq.den() == 1);
      mpz_class m = dq.num() % (long)p;
      CHECK(discriminant(fr) == GFElem(ctx, m.get_si()));
    }
  }
  // inseparable polynomial in char p
  const GFContext* f3 = gf_construct(3, 1);
  CHECK(discriminant(evtest::gfpoly(f3, {1, 0, 0, 1})).is_zero());
  CHECK_THROWS_AS(discriminant(evtest::qpoly({5})), ArgumentError);
}

} // TEST_SUITE
