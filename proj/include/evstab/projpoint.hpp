#pragma once

#include <compare>
#include <optional>
#include <string>
#include <vector>

#include "evstab/gf.hpp"

namespace evstab {

// Point of P^1(K): either a finite field element or the point at infinity.
// Infinity is a first-class state, never an encoded field value.
template <class K>
class ProjPoint {
 public:
  ProjPoint() : finite_(std::nullopt) {}
  explicit ProjPoint(K v) : finite_(std::move(v)) {}
  static ProjPoint infinity() { return ProjPoint(); }

  bool is_infinity() const { return !finite_.has_value(); }
  const K& value() const {
    internal_check(finite_.has_value(), "ProjPoint: value() at infinity");
    return *finite_;
  }

  friend bool operator==(const ProjPoint& a, const ProjPoint& b) {
    if (a.is_infinity() != b.is_infinity()) return false;
    return a.is_infinity() || *a.finite_ == *b.finite_;
  }
  // infinity sorts after every finite point
  friend std::strong_ordering operator<=>(const ProjPoint& a, const ProjPoint& b) {
    if (a.is_infinity() && b.is_infinity()) return std::strong_ordering::equal;
    if (a.is_infinity()) return std::strong_ordering::greater;
    if (b.is_infinity()) return std::strong_ordering::less;
    return *a.finite_ <=> *b.finite_;
  }

  std::string to_string() const {
    return is_infinity() ? "inf" : finite_->to_string();
  }

 private:
  std::optional<K> finite_;
};

// Enumeration of P^1(GF(q)) in canonical order: finite points first
// (element_at order), then infinity.
inline std::vector<ProjPoint<GFElem>> p1_points(const GFContext* ctx) {
  std::vector<ProjPoint<GFElem>> pts;
  pts.reserve(ctx->q + 1);
  for (long long i = 0; i < ctx->q; ++i)
    pts.emplace_back(gf_element_at(ctx, i));
  pts.push_back(ProjPoint<GFElem>::infinity());
  return pts;
}

} // namespace evstab
