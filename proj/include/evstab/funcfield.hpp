#pragma once

#include <compare>
#include <string>

#include "evstab/gf.hpp"
#include "evstab/poly.hpp"

namespace evstab {

// Element of the rational function field GF(q)(t). Canonical form: numerator
// and denominator coprime, denominator monic; zero is 0/1.
class FuncFieldElem {
 public:
  FuncFieldElem() = default;
  explicit FuncFieldElem(const GFContext* base)
      : base_(base),
        num_(),
        den_(Poly<GFElem>::constant(GFElem(base, 1))) {}
  FuncFieldElem(const GFContext* base, Poly<GFElem> num, Poly<GFElem> den);

  static FuncFieldElem from_constant(const GFContext* base, const GFElem& c) {
    return FuncFieldElem(base, Poly<GFElem>::constant(c),
                         Poly<GFElem>::constant(GFElem(base, 1)));
  }
  static FuncFieldElem t(const GFContext* base) {
    return FuncFieldElem(base, Poly<GFElem>::monomial(GFElem(base, 1), 1),
                         Poly<GFElem>::constant(GFElem(base, 1)));
  }

  const GFContext* base() const { return base_; }
  const Poly<GFElem>& num() const { return num_; }
  const Poly<GFElem>& den() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return num_.is_one() && den_.is_one(); }
  bool is_polynomial() const { return den_.is_one(); }

  FuncFieldElem operator+(const FuncFieldElem& o) const;
  FuncFieldElem operator-(const FuncFieldElem& o) const;
  FuncFieldElem operator*(const FuncFieldElem& o) const;
  FuncFieldElem operator/(const FuncFieldElem& o) const;
  FuncFieldElem operator-() const;
  FuncFieldElem inv() const;

  friend bool operator==(const FuncFieldElem& a, const FuncFieldElem& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const FuncFieldElem& a,
                                          const FuncFieldElem& b) {
    auto c = a.num_ <=> b.num_;
    if (c != 0) return c;
    return a.den_ <=> b.den_;
  }

  std::string to_string() const {
    std::string n = num_.to_string("t");
    if (den_.is_one()) return n;
    bool ncomp = n.find_first_of("+-*/^") != std::string::npos;
    std::string d = den_.to_string("t");
    bool dcomp = d.find_first_of("+-*/^") != std::string::npos;
    return (ncomp ? "(" + n + ")" : n) + "/" + (dcomp ? "(" + d + ")" : d);
  }

 private:
  const GFContext* base_ = nullptr;
  Poly<GFElem> num_;
  Poly<GFElem> den_; // monic, coprime to num_
  void canonicalize();
};

inline FuncFieldElem field_zero(const FuncFieldElem& s) {
  return FuncFieldElem(s.base());
}
inline FuncFieldElem field_one(const FuncFieldElem& s) {
  return FuncFieldElem::from_constant(s.base(), GFElem(s.base(), 1));
}
inline FuncFieldElem field_from_mpz(const FuncFieldElem& s, const mpz_class& n) {
  mpz_class r = n % mpz_class((long)s.base()->p);
  return FuncFieldElem::from_constant(s.base(), GFElem(s.base(), r.get_si()));
}
inline long long field_char(const FuncFieldElem& s) { return s.base()->p; }

} // namespace evstab
