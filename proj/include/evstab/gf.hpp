#pragma once

#include <gmpxx.h>

#include <boost/container/small_vector.hpp>
#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "evstab/errors.hpp"

namespace evstab {

// Context for GF(p^m). Contexts are canonical and immortal: gf_construct
// interns them in a registry, so raw pointers are stable identities and
// pointer equality coincides with field equality.
struct GFContext {
  long long p = 0;          // characteristic, prime, p < 2^31 so p*p fits in int64
  int m = 1;                // extension degree
  long long q = 0;          // p^m (construction guards overflow)
  std::vector<long long> modulus; // monic irreducible over GF(p), degree m, low-to-high

  std::string describe() const; // e.g. "GF(9) = GF(3^2), modulus z^2+1"
};

// Interned context for GF(p^m). The modulus is the lexicographically smallest
// monic irreducible of degree m over GF(p), candidates compared by their
// coefficient tuples read from the z^(m-1) coefficient down to the constant.
const GFContext* gf_construct(long long p, int m);

// Element of GF(p^m): residue polynomial in the generator, m coefficients in
// [0, p), low-to-high. Inline storage keeps degree <= 2 fields allocation-free.
class GFElem {
 public:
  using Coeffs = boost::container::small_vector<long long, 2>;

  GFElem() : ctx_(nullptr) {}
  GFElem(const GFContext* ctx, long long c); // constant c mod p
  GFElem(const GFContext* ctx, Coeffs c);    // coefficients, reduced mod p

  const GFContext* ctx() const { return ctx_; }
  const Coeffs& coeffs() const { return c_; }

  bool is_zero() const;
  bool is_one() const;

  GFElem operator+(const GFElem& o) const;
  GFElem operator-(const GFElem& o) const;
  GFElem operator*(const GFElem& o) const;
  GFElem operator/(const GFElem& o) const;
  GFElem operator-() const;
  GFElem inv() const;
  GFElem pow(const mpz_class& e) const;
  GFElem frobenius() const;  // x -> x^p
  GFElem pth_root() const;   // inverse of frobenius (x -> x^(q/p))

  // True when the element lies in the prime subfield (only the constant
  // coefficient may be nonzero).
  bool in_prime_subfield() const;
  long long constant_coeff() const { return c_.empty() ? 0 : c_[0]; }

  friend bool operator==(const GFElem& a, const GFElem& b);
  // Total order: same field only; coefficient tuples compared high-to-low.
  friend std::strong_ordering operator<=>(const GFElem& a, const GFElem& b);

  std::string to_string() const; // "3" in prime subfield, else e.g. "g^2+2*g"

 private:
  const GFContext* ctx_;
  Coeffs c_;
  void reduce_mod_p();
};

// Canonical element enumeration: index written base p, digit j giving the
// coefficient of g^j. element_at(ctx, 0) = 0, 1 = 1, ..., p = g, ...
GFElem gf_element_at(const GFContext* ctx, long long index);
long long gf_element_index(const GFElem& x);

// Image of `x` under the canonical embedding of its field into `super`
// (sub.m must divide super.m, same p). The generator of the subfield maps to
// the first root, in element_at order, of the subfield modulus in `super`.
GFElem gf_embed(const GFElem& x, const GFContext* super);

// First root of a monic polynomial with GF(p)-coefficients (low-to-high) in
// ctx, scanning in element_at order; throws InternalError when none exists.
GFElem gf_first_root(const GFContext* ctx, const std::vector<long long>& poly);

inline GFElem field_zero(const GFElem& s) { return GFElem(s.ctx(), 0); }
inline GFElem field_one(const GFElem& s) { return GFElem(s.ctx(), 1); }
inline GFElem field_from_mpz(const GFElem& s, const mpz_class& n) {
  mpz_class r = n % mpz_class((long)s.ctx()->p);
  return GFElem(s.ctx(), r.get_si());
}
inline long long field_char(const GFElem& s) { return s.ctx()->p; }

} // namespace evstab
