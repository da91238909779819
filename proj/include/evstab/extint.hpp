#pragma once

#include <compare>
#include <cstdint>
#include <string>

#include "evstab/errors.hpp"

namespace evstab {

// Integers extended by +infinity and -infinity, used for valuations and
// degrees. The infinities are a tagged state, never sentinel integer values.
class ExtInt {
 public:
  ExtInt() : kind_(Kind::Finite), v_(0) {}
  ExtInt(long long v) : kind_(Kind::Finite), v_(v) {} // NOLINT(implicit)

  static ExtInt pos_inf() { return ExtInt(Kind::PosInf); }
  static ExtInt neg_inf() { return ExtInt(Kind::NegInf); }

  bool is_finite() const { return kind_ == Kind::Finite; }
  bool is_pos_inf() const { return kind_ == Kind::PosInf; }
  bool is_neg_inf() const { return kind_ == Kind::NegInf; }

  long long finite() const {
    internal_check(is_finite(), "ExtInt: finite() on infinity");
    return v_;
  }

  ExtInt operator+(const ExtInt& o) const {
    if (is_finite() && o.is_finite()) return ExtInt(v_ + o.v_);
    internal_check(!(is_pos_inf() && o.is_neg_inf()) &&
                       !(is_neg_inf() && o.is_pos_inf()),
                   "ExtInt: inf + (-inf)");
    return is_finite() ? o : *this;
  }

  ExtInt operator-() const {
    if (is_finite()) return ExtInt(-v_);
    return is_pos_inf() ? neg_inf() : pos_inf();
  }

  ExtInt operator*(long long k) const {
    if (is_finite()) return ExtInt(v_ * k);
    internal_check(k != 0, "ExtInt: 0 * inf");
    return (k > 0) == is_pos_inf() ? pos_inf() : neg_inf();
  }

  friend bool operator==(const ExtInt& a, const ExtInt& b) {
    return a.kind_ == b.kind_ && (a.kind_ != Kind::Finite || a.v_ == b.v_);
  }

  friend std::strong_ordering operator<=>(const ExtInt& a, const ExtInt& b) {
    if (a.rank() != b.rank()) return a.rank() <=> b.rank();
    if (a.kind_ == Kind::Finite) return a.v_ <=> b.v_;
    return std::strong_ordering::equal;
  }

  std::string to_string() const {
    if (is_pos_inf()) return "+inf";
    if (is_neg_inf()) return "-inf";
    return std::to_string(v_);
  }

 private:
  enum class Kind { NegInf, Finite, PosInf };
  explicit ExtInt(Kind k) : kind_(k), v_(0) {}
  int rank() const {
    return kind_ == Kind::NegInf ? -1 : (kind_ == Kind::Finite ? 0 : 1);
  }
  Kind kind_;
  long long v_;
};

} // namespace evstab
