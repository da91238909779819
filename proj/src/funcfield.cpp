#include "evstab/funcfield.hpp"

namespace evstab {

FuncFieldElem::FuncFieldElem(const GFContext* base, Poly<GFElem> num,
                             Poly<GFElem> den)
    : base_(base), num_(std::move(num)), den_(std::move(den)) {
  internal_check(base_ != nullptr, "FuncFieldElem: null base field");
  if (den_.is_zero()) throw ArgumentError("function field element with zero denominator");
  canonicalize();
}

void FuncFieldElem::canonicalize() {
  if (num_.is_zero()) {
    den_ = Poly<GFElem>::constant(GFElem(base_, 1));
    return;
  }
  Poly<GFElem> g = poly_gcd(num_, den_);
  if (!g.is_one()) {
    num_ = exact_divide(num_, g);
    den_ = exact_divide(den_, g);
  }
  if (!den_.is_monic()) {
    GFElem s = den_.lc().inv();
    num_ = num_.scaled(s);
    den_ = den_.scaled(s);
  }
}

FuncFieldElem FuncFieldElem::operator+(const FuncFieldElem& o) const {
  internal_check(base_ == o.base_, "FuncFieldElem: mixed base fields");
  return FuncFieldElem(base_, num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

FuncFieldElem FuncFieldElem::operator-(const FuncFieldElem& o) const {
  return *this + (-o);
}

FuncFieldElem FuncFieldElem::operator-() const {
  FuncFieldElem r = *this;
  r.num_ = -r.num_;
  return r;
}

FuncFieldElem FuncFieldElem::operator*(const FuncFieldElem& o) const {
  internal_check(base_ == o.base_, "FuncFieldElem: mixed base fields");
  return FuncFieldElem(base_, num_ * o.num_, den_ * o.den_);
}

FuncFieldElem FuncFieldElem::inv() const {
  if (is_zero()) throw ArgumentError("inverse of zero field element");
  return FuncFieldElem(base_, den_, num_);
}

FuncFieldElem FuncFieldElem::operator/(const FuncFieldElem& o) const {
  return *this * o.inv();
}

} // namespace evstab
