#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "evstab/extint.hpp"
#include "evstab/funcfield.hpp"
#include "evstab/gf.hpp"
#include "evstab/poly.hpp"
#include "evstab/projpoint.hpp"
#include "evstab/rat.hpp"
#include "evstab/valuation.hpp"
#include "helpers.hpp"

using namespace evstab;
using namespace evtest;

TEST_SUITE_BEGIN("exact_arith");

TEST_CASE("rationals are always canonical") {
  CHECK(Rat(mpz_class(4), mpz_class(6)).to_string() == "2/3");
  CHECK(Rat(mpz_class(2), mpz_class(-4)).to_string() == "-1/2");
  CHECK(Rat(mpz_class(2), mpz_class(-4)).den() == 2);
  CHECK(Rat(0).is_zero());
  CHECK((Rat(1) / Rat(mpz_class(3)) * Rat(mpz_class(3))).is_one());
  CHECK_THROWS_AS(Rat(1) / Rat(0), ArgumentError);
  CHECK(Rat(mpz_class(-6), mpz_class(4)) < Rat(0));
}

TEST_CASE("extended integers") {
  CHECK(ExtInt::neg_inf() < ExtInt(-1000000));
  CHECK(ExtInt(5) < ExtInt::pos_inf());
  CHECK(ExtInt(2) + ExtInt(3) == ExtInt(5));
  CHECK(ExtInt::pos_inf() + ExtInt(7) == ExtInt::pos_inf());
  CHECK(-ExtInt::pos_inf() == ExtInt::neg_inf());
  CHECK_THROWS_AS(ExtInt::pos_inf() + ExtInt::neg_inf(), InternalError);
  CHECK_THROWS_AS(ExtInt::pos_inf().finite(), InternalError);
}

TEST_CASE("deterministic moduli for GF(p^m)") {
  CHECK(gf_construct(2, 1)->modulus == std::vector<long long>{0, 1});
  // frozen expected values
  CHECK(gf_construct(2, 2)->modulus == std::vector<long long>{1, 1, 1});
  CHECK(gf_construct(3, 2)->modulus == std::vector<long long>{1, 0, 1});

  // oracle: z^2+z+1 is the first irreducible monic quadratic over GF(2) in
  // high-to-low lexicographic candidate order (a quadratic is reducible over
  // GF(p) exactly when it has a root)
  auto has_root = [](long long p, long long c1, long long c0) {
    for (long long x = 0; x < p; ++x)
      if ((x * x + c1 * x + c0) % p == 0) return true;
    return false;
  };
  bool earlier_irreducible = false;
  for (long long c1 = 0; c1 <= 1; ++c1)
    for (long long c0 = 0; c0 <= 1; ++c0) {
      if (c1 == 1 && c0 == 1) continue; // the chosen one
      if (std::make_pair(c1, c0) < std::make_pair(1LL, 1LL) && !has_root(2, c1, c0))
        earlier_irreducible = true;
    }
  CHECK_FALSE(earlier_irreducible);
  CHECK_FALSE(has_root(3, 0, 1)); // z^2+1 irreducible over GF(3)

  CHECK(gf_construct(2, 2) == gf_construct(2, 2)); // interned
  CHECK_THROWS_AS(gf_construct(4, 1), ArgumentError);
  CHECK_THROWS_AS(gf_construct(1, 1), ArgumentError);
}

TEST_CASE("field axioms hold exhaustively for all GF(p^m) with p^m <= 49") {
  std::vector<std::pair<long long, int>> fields;
  for (long long p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47})
    fields.push_back({p, 1});
  for (auto [p, m] : std::vector<std::pair<long long, int>>{
           {2, 2}, {2, 3}, {2, 4}, {2, 5}, {3, 2}, {3, 3}, {5, 2}, {7, 2}})
    fields.push_back({p, m});

  for (auto [p, m] : fields) {
    const GFContext* F = gf_construct(p, m);
    REQUIRE(F->q <= 49);
    std::vector<GFElem> all;
    for (long long i = 0; i < F->q; ++i) all.push_back(gf_element_at(F, i));
    // inverses and index round-trip
    for (long long i = 0; i < F->q; ++i) {
      CHECK(gf_element_index(all[i]) == i);
      if (!all[i].is_zero()) CHECK((all[i] * all[i].inv()).is_one());
    }
    // Frobenius is a field automorphism (bijective, additive, multiplicative)
    std::vector<bool> hit(F->q, false);
    for (auto& x : all) hit[gf_element_index(x.frobenius())] = true;
    for (bool h : hit) CHECK(h);
    for (auto& x : all) CHECK(x.pth_root().frobenius() == x);
    // associativity + distributivity on all triples
    for (auto& a : all)
      for (auto& b : all)
        for (auto& c : all) {
          CHECK((a + b) + c == a + (b + c));
          CHECK((a * b) * c == a * (b * c));
          CHECK(a * (b + c) == a * b + a * c);
        }
    for (auto& a : all)
      for (auto& b : all) {
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
      }
  }
}

TEST_CASE("subfield embeddings are ring homomorphisms") {
  const GFContext* F4 = gf_construct(2, 2);
  const GFContext* F16 = gf_construct(2, 4);
  // generator image must satisfy the subfield modulus
  GFElem g4 = gf_element_at(F4, 2); // the generator g
  GFElem img = gf_embed(g4, F16);
  GFElem one16(F16, 1);
  CHECK((img * img + img + one16).is_zero()); // z^2+z+1 at the image
  for (long long i = 0; i < 4; ++i)
    for (long long j = 0; j < 4; ++j) {
      GFElem a = gf_element_at(F4, i), b = gf_element_at(F4, j);
      CHECK(gf_embed(a * b, F16) == gf_embed(a, F16) * gf_embed(b, F16));
      CHECK(gf_embed(a + b, F16) == gf_embed(a, F16) + gf_embed(b, F16));
    }
  CHECK(gf_embed(GFElem(gf_construct(3, 1), 2), gf_construct(3, 2)) ==
        GFElem(gf_construct(3, 2), 2));
}

TEST_CASE("p-adic valuations on Q") {
  PadicValuation v2(2), v3(3);
  CHECK(v2.value(Rat(12)) == ExtInt(2));
  CHECK(v2.value(Rat(mpz_class(1), mpz_class(2))) == ExtInt(-1));
  CHECK(v3.value(Rat(mpz_class(6), mpz_class(5))) == ExtInt(1));
  CHECK(v2.value(Rat(0)) == ExtInt::pos_inf());
  CHECK(v2.value(ProjPoint<Rat>::infinity()) == ExtInt::neg_inf());
  CHECK_THROWS_AS(PadicValuation(4), ArgumentError);

  // reduction of v-integral rationals
  CHECK(v2.reduce(Rat(mpz_class(1), mpz_class(3))) == GFElem(v2.residue_field(), 1));
  CHECK_THROWS_AS(v2.reduce(Rat(mpz_class(1), mpz_class(2))), ArgumentError);
  CHECK(v2.reduce_point(ProjPoint<Rat>(Rat(mpz_class(1), mpz_class(2)))).is_infinity());
  CHECK(v2.reduce_point(ProjPoint<Rat>::infinity()).is_infinity());
  CHECK(v2.reduce_point(ProjPoint<Rat>(Rat(mpz_class(1), mpz_class(3)))) ==
        ProjPoint<GFElem>(GFElem(v2.residue_field(), 1)));
}

TEST_CASE("ultrametric and multiplicativity on random rationals") {
  std::mt19937_64 rng(12345);
  for (long long p : {2, 3, 5}) {
    PadicValuation v(p);
    for (int it = 0; it < 200; ++it) {
      Rat x = rand_rat(rng), y = rand_rat(rng);
      ExtInt vx = v.value(x), vy = v.value(y);
      CHECK(v.value(x * y) == vx + vy);
      ExtInt vmin = vx < vy ? vx : vy;
      ExtInt vsum = v.value(x + y);
      CHECK(vsum >= vmin);
      if (vx != vy) CHECK(vsum == vmin);
    }
  }
}

TEST_CASE("reduction is constant on p-adic neighborhoods") {
  std::mt19937_64 rng(777);
  PadicValuation v(5);
  for (int it = 0; it < 100; ++it) {
    Rat a = rand_rat(rng);
    Rat r = rand_rat(rng);
    if (v.value(r) < ExtInt(0)) continue;
    Rat shifted = a + Rat(5) * r;
    CHECK(v.reduce_point(ProjPoint<Rat>(a)) ==
          v.reduce_point(ProjPoint<Rat>(shifted)));
  }
}

TEST_CASE("function field elements are canonical") {
  const GFContext* F5 = gf_construct(5, 1);
  Poly<GFElem> num = gfpoly(F5, {4, 0, 1}); // t^2 - 1
  Poly<GFElem> den = gfpoly(F5, {4, 1});    // t - 1
  FuncFieldElem x(F5, num, den);
  CHECK(x.num() == gfpoly(F5, {1, 1}));
  CHECK(x.den().is_one());
  CHECK(x.to_string() == "t+1");
  // denominator made monic
  FuncFieldElem y(F5, gfpoly(F5, {1}), gfpoly(F5, {0, 2}));
  CHECK(y.den() == gfpoly(F5, {0, 1}));
  CHECK(y.num() == gfpoly(F5, {3}));
  CHECK((y * y.inv()).is_one());
  CHECK_THROWS_AS(FuncFieldElem(F5, num, Poly<GFElem>()), ArgumentError);
}

TEST_CASE("t-adic and pi-adic valuations on GF(q)(t)") {
  const GFContext* F5 = gf_construct(5, 1);
  PiAdicValuation vt(F5, gfpoly(F5, {0, 1}));
  CHECK(vt.describe() == "t-adic");
  FuncFieldElem t = FuncFieldElem::t(F5);
  CHECK(vt.value(t) == ExtInt(1));
  // (t^2+t)/t^3 has valuation -2
  FuncFieldElem x(F5, gfpoly(F5, {0, 1, 1}), gfpoly(F5, {0, 0, 0, 1}));
  CHECK(vt.value(x) == ExtInt(-2));
  // reduce (t+2)/(t+1) at t = 0 -> 2
  FuncFieldElem y(F5, gfpoly(F5, {2, 1}), gfpoly(F5, {1, 1}));
  CHECK(vt.reduce(y) == GFElem(F5, 2));
  CHECK(vt.value(FuncFieldElem(F5)) == ExtInt::pos_inf());

  // pi = t+1 over GF(3): residue field GF(3), t reduces to -1 = 2
  const GFContext* F3 = gf_construct(3, 1);
  PiAdicValuation vp1(F3, gfpoly(F3, {1, 1}));
  CHECK(vp1.residue_field() == F3);
  CHECK(vp1.reduce(FuncFieldElem::t(F3)) == GFElem(F3, 2));

  // pi = t^2+1 over GF(3): residue field GF(9), t maps to a root of z^2+1
  PiAdicValuation vp2(F3, gfpoly(F3, {1, 0, 1}));
  CHECK(vp2.residue_field()->q == 9);
  GFElem theta = vp2.reduce(FuncFieldElem::t(F3));
  GFElem one9(vp2.residue_field(), 1);
  CHECK((theta * theta + one9).is_zero());
  FuncFieldElem pi_elem(F3, gfpoly(F3, {1, 0, 1}), gfpoly(F3, {1}));
  CHECK(vp2.value(pi_elem) == ExtInt(1));
  CHECK(vp2.value(pi_elem * pi_elem) == ExtInt(2));

  // reducible uniformizer rejected
  CHECK_THROWS_AS(PiAdicValuation(F3, gfpoly(F3, {2, 0, 1})), ArgumentError);
  // t^2+2 = t^2-1 = (t-1)(t+1) over GF(3)
  CHECK_THROWS_AS(PiAdicValuation(F3, gfpoly(F3, {0, 0, 2})), ArgumentError);
}

TEST_CASE("projective points") {
  ProjPoint<Rat> inf = ProjPoint<Rat>::infinity();
  ProjPoint<Rat> zero{Rat(0)};
  CHECK(inf.is_infinity());
  CHECK(inf == ProjPoint<Rat>::infinity());
  CHECK(inf != zero);
  CHECK(zero < inf);
  CHECK(inf.to_string() == "inf");
  const GFContext* F3 = gf_construct(3, 1);
  auto pts = p1_points(F3);
  CHECK(pts.size() == 4);
  CHECK(pts.back().is_infinity());
}

TEST_SUITE_END();
