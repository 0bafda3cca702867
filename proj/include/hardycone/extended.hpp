// Extended nonnegative reals [0, +inf] and the degenerate-case arithmetic
// used throughout the library: 0 * inf = 0, inf / inf = 0, 0 / 0 = 0.
#pragma once

#include <cmath>
#include <limits>

namespace hardycone {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Degenerate-product convention: 0 * inf = 0.
inline double ext_mul(double a, double b) {
  if (a == 0.0 || b == 0.0) return 0.0;
  return a * b;
}

// Degenerate-quotient convention: 0/0 = 0, inf/inf = 0; x/0 = inf for x > 0,
// x/inf = 0 for finite x.
inline double ext_div(double a, double b) {
  if (a == 0.0) return 0.0;
  if (std::isinf(a) && std::isinf(b)) return 0.0;
  if (std::isinf(b)) return 0.0;
  if (b == 0.0) return kInf;
  return a / b;
}

// Powers of extended nonnegative reals. 0^0 = inf^0 = 1. 0^e = inf, inf^e = 0
// for e < 0.
inline double ext_pow(double x, double e) {
  if (e == 0.0) return 1.0;
  if (x == 0.0) return e > 0.0 ? 0.0 : kInf;
  if (std::isinf(x)) return e > 0.0 ? kInf : 0.0;
  return std::pow(x, e);
}

// Thin value type over [0, inf] whose operators follow the conventions above.
// Mostly used at module boundaries; the hot numeric paths call ext_* directly.
class ExtendedValue {
 public:
  constexpr ExtendedValue() = default;
  constexpr ExtendedValue(double v) : v_(v) {}  // NOLINT: implicit interop

  double value() const { return v_; }
  bool is_inf() const { return std::isinf(v_); }
  bool is_zero() const { return v_ == 0.0; }
  bool finite() const { return std::isfinite(v_); }

  friend ExtendedValue operator+(ExtendedValue a, ExtendedValue b) {
    return ExtendedValue(a.v_ + b.v_);
  }
  friend ExtendedValue operator*(ExtendedValue a, ExtendedValue b) {
    return ExtendedValue(ext_mul(a.v_, b.v_));
  }
  friend ExtendedValue operator/(ExtendedValue a, ExtendedValue b) {
    return ExtendedValue(ext_div(a.v_, b.v_));
  }
  friend bool operator==(ExtendedValue a, ExtendedValue b) { return a.v_ == b.v_; }
  friend bool operator<(ExtendedValue a, ExtendedValue b) { return a.v_ < b.v_; }
  friend bool operator<=(ExtendedValue a, ExtendedValue b) { return a.v_ <= b.v_; }

  ExtendedValue pow(double e) const { return ExtendedValue(ext_pow(v_, e)); }

 private:
  double v_ = 0.0;
};

}  // namespace hardycone
