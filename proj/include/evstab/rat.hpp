#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <string>

#include "evstab/errors.hpp"

namespace evstab {

// Exact rational number. Always canonical: reduced to lowest terms with a
// positive denominator (mpq_class invariant after canonicalize()).
class Rat {
 public:
  Rat() : q_(0) {}
  Rat(long long n) : q_(mpz_class((long)n)) {} // NOLINT(implicit)
  explicit Rat(const mpz_class& n) : q_(n) {}
  Rat(const mpz_class& n, const mpz_class& d) : q_(n, d) {
    if (d == 0) throw ArgumentError("rational with zero denominator");
    q_.canonicalize();
  }
  explicit Rat(const mpq_class& q) : q_(q) { q_.canonicalize(); }

  const mpq_class& raw() const { return q_; }
  mpz_class num() const { return q_.get_num(); }
  mpz_class den() const { return q_.get_den(); }

  bool is_zero() const { return q_ == 0; }
  bool is_one() const { return q_ == 1; }
  bool is_integer() const { return q_.get_den() == 1; }
  int sign() const { return sgn(q_); }

  Rat operator+(const Rat& o) const { return Rat(mpq_class(q_ + o.q_)); }
  Rat operator-(const Rat& o) const { return Rat(mpq_class(q_ - o.q_)); }
  Rat operator*(const Rat& o) const { return Rat(mpq_class(q_ * o.q_)); }
  Rat operator/(const Rat& o) const {
    if (o.is_zero()) throw ArgumentError("rational division by zero");
    return Rat(mpq_class(q_ / o.q_));
  }
  Rat operator-() const { return Rat(mpq_class(-q_)); }
  Rat inv() const {
    if (is_zero()) throw ArgumentError("inverse of zero");
    return Rat(mpq_class(1 / q_));
  }

  friend bool operator==(const Rat& a, const Rat& b) { return a.q_ == b.q_; }
  friend std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
    int c = cmp(a.q_, b.q_);
    return c <=> 0;
  }

  std::string to_string() const {
    if (q_.get_den() == 1) return q_.get_num().get_str();
    return q_.get_num().get_str() + "/" + q_.get_den().get_str();
  }

 private:
  mpq_class q_;
};

// Field-trait helpers; each field type provides the same overload set so the
// generic polynomial layer can stay context-free (GF/function-field elements
// carry their context, so fresh constants are minted from a sample element).
inline Rat field_zero(const Rat&) { return Rat(0); }
inline Rat field_one(const Rat&) { return Rat(1); }
inline Rat field_from_mpz(const Rat&, const mpz_class& n) { return Rat(n); }
inline long long field_char(const Rat&) { return 0; }

} // namespace evstab
