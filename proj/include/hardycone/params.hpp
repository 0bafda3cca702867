// Exponent tuples and regime classification for the characterizations.
#pragma once

#include <cmath>
#include <optional>
#include <string>

#include "hardycone/errors.hpp"
#include "hardycone/extended.hpp"

namespace hardycone {

// p, q in (0, inf]; s in [1, inf); optional delta in (0, s].
struct Params {
  double p = 1.0;
  double q = 1.0;
  double s = 1.0;
  std::optional<double> delta;

  Params() = default;
  Params(double p_, double q_, double s_ = 1.0, std::optional<double> delta_ = std::nullopt)
      : p(p_), q(q_), s(s_), delta(delta_) {
    if (!(p > 0.0) || !(q > 0.0)) throw invalid_argument("p, q must lie in (0, inf]");
    if (!(s >= 1.0) || std::isinf(s)) throw invalid_argument("s must lie in [1, inf)");
    if (delta && !(*delta > 0.0 && *delta <= s)) throw invalid_argument("delta must lie in (0, s]");
  }

  // conjugate exponent: 1/p + 1/p' = 1 for p in [1, inf]
  double conj_p() const {
    if (p < 1.0) throw invalid_argument("conjugate exponent needs p >= 1");
    if (std::isinf(p)) return 1.0;
    if (p == 1.0) return kInf;
    return p / (p - 1.0);
  }
  double conj_s() const {
    if (std::isinf(s)) return 1.0;
    if (s == 1.0) return kInf;
    return s / (s - 1.0);
  }

  // auxiliary exponent: 1/r = 1/q - 1/p, defined for 0 < q < p < inf
  ExtendedValue r() const {
    if (!(q < p) || std::isinf(p)) return ExtendedValue(kInf);
    double inv = 1.0 / q - (std::isinf(p) ? 0.0 : 1.0 / p);
    return ExtendedValue(1.0 / inv);
  }
};

enum class RegimeFamily { MonotoneHardy, Iterated };

struct Regime {
  RegimeFamily family = RegimeFamily::MonotoneHardy;
  int index = 0;  // 1-based case number
  std::string label;

  friend bool operator==(const Regime& a, const Regime& b) {
    return a.family == b.family && a.index == b.index;
  }
};

// Case partition of the monotone-cone Hardy characterization:
//   I:    1 < p <= q < inf        II:  q < p < inf and 1 < p
//   III:  q < p <= 1              IV:  p <= q < inf and p <= 1
//   V:    p <= 1, q = inf         VI:  1 < p < inf, q = inf
//   VII:  p = inf, 0 < q < inf    VIII: p = q = inf
// and of the iterated characterizations (s given):
//   i:   p < s <= q < inf         ii:  q < s < inf and p < s
//   iii: q < s <= p               iv:  s <= q < inf and s <= p
//   v:   s <= p, q = inf          vi:  p < s, q = inf
inline Regime classify(double p, double q, std::optional<double> s = std::nullopt) {
  if (!(p > 0.0 && q > 0.0)) throw invalid_argument("classify requires p, q in (0, inf]");
  static const char* roman[] = {"", "I", "II", "III", "IV", "V", "VI", "VII", "VIII"};
  static const char* lower[] = {"", "i", "ii", "iii", "iv", "v", "vi"};
  if (s) {
    if (!(*s >= 1.0) || std::isinf(*s)) throw invalid_argument("classify requires s in [1, inf)");
    int idx;
    if (std::isinf(q)) idx = p < *s ? 6 : 5;
    else if (*s <= q) idx = p < *s ? 1 : 4;
    else idx = p < *s ? 2 : 3;
    return Regime{RegimeFamily::Iterated, idx, lower[idx]};
  }
  int idx;
  if (std::isinf(p)) idx = std::isinf(q) ? 8 : 7;
  else if (std::isinf(q)) idx = p <= 1.0 ? 5 : 6;
  else if (p > 1.0) idx = p <= q ? 1 : 2;
  else idx = p <= q ? 4 : 3;
  return Regime{RegimeFamily::MonotoneHardy, idx, roman[idx]};
}

}  // namespace hardycone
