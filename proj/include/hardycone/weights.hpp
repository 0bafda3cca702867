// Closed-form weight family on (0, inf): pure powers, two-piece powers,
// right-continuous step tables, and the zero weight.  The family is closed
// under pointwise powers, reflection x -> 1/x, and has exact lower/upper
// cumulative integrals (extended-real valued).
#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <variant>
#include <vector>

#include "hardycone/errors.hpp"
#include "hardycone/extended.hpp"

namespace hardycone {

struct PowerWeight {
  double coeff = 1.0;  // > 0
  double alpha = 0.0;  // c * x^alpha
};

struct TwoPiecePowerWeight {
  double c1 = 1.0, alpha = 0.0;  // x < knot : c1 * x^alpha
  double c2 = 1.0, beta = 0.0;   // x >= knot: c2 * x^beta
  double knot = 1.0;             // > 0
};

// values[i] on [breaks[i], breaks[i+1]); zero outside [breaks.front(), breaks.back()).
struct StepTableWeight {
  std::vector<double> breaks;  // strictly increasing, > 0, size = values.size() + 1
  std::vector<double> values;  // >= 0
};

struct ZeroWeight {};

// -- closed-form power integrals ---------------------------------------------

// int_l^r c x^a dx over 0 < l <= r (finite endpoints).
inline double power_segment_integral(double c, double a, double l, double r) {
  if (c == 0.0 || l == r) return 0.0;
  if (a == -1.0) return c * std::log(r / l);
  return c * (std::pow(r, a + 1.0) - std::pow(l, a + 1.0)) / (a + 1.0);
}

// int_0^t c x^a dx  (+inf when a <= -1 and c > 0).
inline double power_lower_integral(double c, double a, double t) {
  if (c == 0.0) return 0.0;
  if (a <= -1.0) return kInf;
  return c * std::pow(t, a + 1.0) / (a + 1.0);
}

// int_t^inf c x^a dx  (+inf when a >= -1 and c > 0).
inline double power_upper_integral(double c, double a, double t) {
  if (c == 0.0) return 0.0;
  if (a >= -1.0) return kInf;
  return -c * std::pow(t, a + 1.0) / (a + 1.0);
}

// Local power behaviour w(x) ~ coeff * x^exponent near one end of (0, inf).
struct PowerAsymptote {
  double coeff = 0.0;
  double exponent = 0.0;
};

enum class DualKind { Density, Plain };

class WeightSpec {
 public:
  using Variant = std::variant<PowerWeight, TwoPiecePowerWeight, StepTableWeight, ZeroWeight>;

  WeightSpec() : v_(ZeroWeight{}) {}
  WeightSpec(Variant v) : v_(std::move(v)) { validate(); }

  static WeightSpec power(double c, double alpha) { return WeightSpec(PowerWeight{c, alpha}); }
  static WeightSpec two_piece(double c1, double alpha, double c2, double beta, double knot) {
    return WeightSpec(TwoPiecePowerWeight{c1, alpha, c2, beta, knot});
  }
  static WeightSpec step(std::vector<double> breaks, std::vector<double> values) {
    return WeightSpec(StepTableWeight{std::move(breaks), std::move(values)});
  }
  static WeightSpec zero() { return WeightSpec(ZeroWeight{}); }

  const Variant& variant() const { return v_; }
  bool is_zero() const { return std::holds_alternative<ZeroWeight>(v_); }

  // Pointwise value; x must be > 0.
  double evaluate(double x) const {
    if (!(x > 0.0)) throw invalid_argument("weight evaluation requires x > 0");
    return std::visit(
        [x](const auto& w) -> double {
          using T = std::decay_t<decltype(w)>;
          if constexpr (std::is_same_v<T, PowerWeight>) {
            return w.coeff * std::pow(x, w.alpha);
          } else if constexpr (std::is_same_v<T, TwoPiecePowerWeight>) {
            return x < w.knot ? w.c1 * std::pow(x, w.alpha) : w.c2 * std::pow(x, w.beta);
          } else if constexpr (std::is_same_v<T, StepTableWeight>) {
            if (x < w.breaks.front() || x >= w.breaks.back()) return 0.0;
            auto it = std::upper_bound(w.breaks.begin(), w.breaks.end(), x);
            return w.values[static_cast<size_t>(it - w.breaks.begin()) - 1];
          } else {
            return 0.0;
          }
        },
        v_);
  }

  // int_0^t w, exact.
  double integrate_lower(double t) const {
    if (!(t > 0.0)) throw invalid_argument("integrate_lower requires t > 0");
    return std::visit(
        [t, this](const auto& w) -> double {
          using T = std::decay_t<decltype(w)>;
          if constexpr (std::is_same_v<T, PowerWeight>) {
            return power_lower_integral(w.coeff, w.alpha, t);
          } else if constexpr (std::is_same_v<T, TwoPiecePowerWeight>) {
            if (t <= w.knot) return power_lower_integral(w.c1, w.alpha, t);
            double head = power_lower_integral(w.c1, w.alpha, w.knot);
            return head + power_segment_integral(w.c2, w.beta, w.knot, t);
          } else if constexpr (std::is_same_v<T, StepTableWeight>) {
            return step_lower(w, t);
          } else {
            return 0.0;
          }
        },
        v_);
  }

  // int_t^inf w, exact.
  double integrate_upper(double t) const {
    if (!(t > 0.0)) throw invalid_argument("integrate_upper requires t > 0");
    return std::visit(
        [t](const auto& w) -> double {
          using T = std::decay_t<decltype(w)>;
          if constexpr (std::is_same_v<T, PowerWeight>) {
            return power_upper_integral(w.coeff, w.alpha, t);
          } else if constexpr (std::is_same_v<T, TwoPiecePowerWeight>) {
            if (t >= w.knot) return power_upper_integral(w.c2, w.beta, t);
            return power_segment_integral(w.c1, w.alpha, t, w.knot) +
                   power_upper_integral(w.c2, w.beta, w.knot);
          } else if constexpr (std::is_same_v<T, StepTableWeight>) {
            return step_upper(w, t);
          } else {
            return 0.0;
          }
        },
        v_);
  }

  // int_l^r w over a finite subinterval, exact.
  double integrate_segment(double l, double r) const {
    if (!(0.0 < l && l <= r)) throw invalid_argument("integrate_segment requires 0 < l <= r");
    return std::visit(
        [l, r](const auto& w) -> double {
          using T = std::decay_t<decltype(w)>;
          if constexpr (std::is_same_v<T, PowerWeight>) {
            return power_segment_integral(w.coeff, w.alpha, l, r);
          } else if constexpr (std::is_same_v<T, TwoPiecePowerWeight>) {
            double lo = std::min(r, w.knot), hi = std::max(l, w.knot);
            double s = 0.0;
            if (l < lo) s += power_segment_integral(w.c1, w.alpha, l, lo);
            if (hi < r) s += power_segment_integral(w.c2, w.beta, hi, r);
            return s;
          } else if constexpr (std::is_same_v<T, StepTableWeight>) {
            double s = 0.0;
            for (size_t i = 0; i + 1 < w.breaks.size(); ++i) {
              double a = std::max(l, w.breaks[i]), b = std::min(r, w.breaks[i + 1]);
              if (a < b) s += w.values[i] * (b - a);
            }
            return s;
          } else {
            return 0.0;
          }
        },
        v_);
  }

  double total_mass() const {
    double t = 1.0;
    double lo = integrate_lower(t), up = integrate_upper(t);
    return lo + up;
  }

  // Essential supremum of w over (lo, hi); hi may be +inf, lo may be 0.
  double essential_sup(double lo, double hi) const {
    if (!(lo >= 0.0 && hi > lo)) throw invalid_argument("essential_sup requires 0 <= lo < hi");
    auto piece_sup = [](double c, double a, double l, double r) -> double {
      if (c == 0.0) return 0.0;
      if (a == 0.0) return c;
      if (a > 0.0) return std::isinf(r) ? kInf : c * std::pow(r, a);
      return l == 0.0 ? kInf : c * std::pow(l, a);
    };
    return std::visit(
        [&](const auto& w) -> double {
          using T = std::decay_t<decltype(w)>;
          if constexpr (std::is_same_v<T, PowerWeight>) {
            return piece_sup(w.coeff, w.alpha, lo, hi);
          } else if constexpr (std::is_same_v<T, TwoPiecePowerWeight>) {
            double s = 0.0;
            if (lo < w.knot) s = std::max(s, piece_sup(w.c1, w.alpha, lo, std::min(hi, w.knot)));
            if (hi > w.knot) s = std::max(s, piece_sup(w.c2, w.beta, std::max(lo, w.knot), hi));
            return s;
          } else if constexpr (std::is_same_v<T, StepTableWeight>) {
            double s = 0.0;
            for (size_t i = 0; i + 1 < w.breaks.size(); ++i) {
              if (std::max(lo, w.breaks[i]) < std::min(hi, w.breaks[i + 1]))
                s = std::max(s, w.values[i]);
            }
            return s;
          } else {
            return 0.0;
          }
        },
        v_);
  }

  // Interior structure points (knots / step breakpoints).
  std::vector<double> breakpoints() const {
    return std::visit(
        [](const auto& w) -> std::vector<double> {
          using T = std::decay_t<decltype(w)>;
          if constexpr (std::is_same_v<T, TwoPiecePowerWeight>) {
            return {w.knot};
          } else if constexpr (std::is_same_v<T, StepTableWeight>) {
            return w.breaks;
          } else {
            return {};
          }
        },
        v_);
  }

  // Exact power behaviour near 0 / near inf (zero coeff for step tables and Zero).
  PowerAsymptote asymptote_at_zero() const {
    return std::visit(
        [](const auto& w) -> PowerAsymptote {
          using T = std::decay_t<decltype(w)>;
          if constexpr (std::is_same_v<T, PowerWeight>) return {w.coeff, w.alpha};
          else if constexpr (std::is_same_v<T, TwoPiecePowerWeight>) return {w.c1, w.alpha};
          else return {0.0, 0.0};
        },
        v_);
  }
  PowerAsymptote asymptote_at_inf() const {
    return std::visit(
        [](const auto& w) -> PowerAsymptote {
          using T = std::decay_t<decltype(w)>;
          if constexpr (std::is_same_v<T, PowerWeight>) return {w.coeff, w.alpha};
          else if constexpr (std::is_same_v<T, TwoPiecePowerWeight>) return {w.c2, w.beta};
          else return {0.0, 0.0};
        },
        v_);
  }

  // lambda * w, staying in the family.
  WeightSpec scaled(double lambda) const {
    if (!(lambda >= 0.0)) throw invalid_argument("scaled requires lambda >= 0");
    if (lambda == 0.0) return zero();
    return std::visit(
        [lambda](const auto& w) -> WeightSpec {
          using T = std::decay_t<decltype(w)>;
          if constexpr (std::is_same_v<T, PowerWeight>) {
            return power(lambda * w.coeff, w.alpha);
          } else if constexpr (std::is_same_v<T, TwoPiecePowerWeight>) {
            return two_piece(lambda * w.c1, w.alpha, lambda * w.c2, w.beta, w.knot);
          } else if constexpr (std::is_same_v<T, StepTableWeight>) {
            auto vals = w.values;
            for (auto& v : vals) v *= lambda;
            return step(w.breaks, vals);
          } else {
            return zero();
          }
        },
        v_);
  }

  // Pointwise power w^e when the result stays in the family exactly.
  // Step tables close only for e >= 0 (0^e = inf otherwise).
  std::optional<WeightSpec> pow_transform(double e) const {
    return std::visit(
        [e](const auto& w) -> std::optional<WeightSpec> {
          using T = std::decay_t<decltype(w)>;
          if constexpr (std::is_same_v<T, PowerWeight>) {
            return power(std::pow(w.coeff, e), w.alpha * e);
          } else if constexpr (std::is_same_v<T, TwoPiecePowerWeight>) {
            return two_piece(std::pow(w.c1, e), w.alpha * e, std::pow(w.c2, e), w.beta * e, w.knot);
          } else if constexpr (std::is_same_v<T, StepTableWeight>) {
            if (e < 0.0) return std::nullopt;
            auto vals = w.values;
            for (auto& v : vals) v = ext_pow(v, e);
            return step(w.breaks, vals);
          } else {
            return e >= 0.0 ? std::optional<WeightSpec>(zero()) : std::nullopt;
          }
        },
        v_);
  }

 private:
  static double step_lower(const StepTableWeight& w, double t) {
    double s = 0.0;
    for (size_t i = 0; i + 1 < w.breaks.size(); ++i) {
      if (t <= w.breaks[i]) break;
      s += w.values[i] * (std::min(t, w.breaks[i + 1]) - w.breaks[i]);
    }
    return s;
  }
  static double step_upper(const StepTableWeight& w, double t) {
    double s = 0.0;
    for (size_t i = 0; i + 1 < w.breaks.size(); ++i) {
      double a = std::max(t, w.breaks[i]);
      if (a < w.breaks[i + 1]) s += w.values[i] * (w.breaks[i + 1] - a);
    }
    return s;
  }

  void validate() const {
    std::visit(
        [](const auto& w) {
          using T = std::decay_t<decltype(w)>;
          if constexpr (std::is_same_v<T, PowerWeight>) {
            if (!(w.coeff > 0.0)) throw invalid_argument("power weight needs coeff > 0");
          } else if constexpr (std::is_same_v<T, TwoPiecePowerWeight>) {
            if (!(w.c1 > 0.0 && w.c2 > 0.0)) throw invalid_argument("two-piece weight needs c1, c2 > 0");
            if (!(w.knot > 0.0)) throw invalid_argument("two-piece weight needs knot > 0");
          } else if constexpr (std::is_same_v<T, StepTableWeight>) {
            if (w.breaks.size() < 2 || w.values.size() + 1 != w.breaks.size())
              throw invalid_argument("step table needs k >= 2 breakpoints and k-1 values");
            for (size_t i = 0; i + 1 < w.breaks.size(); ++i)
              if (!(w.breaks[i] > 0.0 && w.breaks[i] < w.breaks[i + 1]))
                throw invalid_argument("step breakpoints must be positive and strictly increasing");
            for (double v : w.values)
              if (!(v >= 0.0)) throw invalid_argument("step values must be nonnegative");
          }
        },
        v_);
  }

  Variant v_;
};

// x -> 1/t reflection.  Density carries the Jacobian (w(1/t)/t^2), Plain does
// not (w(1/t)); Plain is the form the esup norms transform with.
inline WeightSpec dual_transform(const WeightSpec& w, DualKind kind) {
  const bool density = (kind == DualKind::Density);
  return std::visit(
      [density](const auto& ww) -> WeightSpec {
        using T = std::decay_t<decltype(ww)>;
        if constexpr (std::is_same_v<T, PowerWeight>) {
          return WeightSpec::power(ww.coeff, density ? -ww.alpha - 2.0 : -ww.alpha);
        } else if constexpr (std::is_same_v<T, TwoPiecePowerWeight>) {
          double shift = density ? -2.0 : 0.0;
          return WeightSpec::two_piece(ww.c2, -ww.beta + shift, ww.c1, -ww.alpha + shift,
                                       1.0 / ww.knot);
        } else if constexpr (std::is_same_v<T, StepTableWeight>) {
          size_t k = ww.breaks.size();
          std::vector<double> breaks(k), values(k - 1);
          for (size_t i = 0; i < k; ++i) breaks[i] = 1.0 / ww.breaks[k - 1 - i];
          for (size_t i = 0; i + 1 < k; ++i) {
            double val = ww.values[k - 2 - i];
            if (density) {
              // cell-average of val/t^2 on [breaks[i], breaks[i+1]]; keeps the
              // cell mass of the reflected density exact
              val = val / (breaks[i] * breaks[i + 1]);
            }
            values[i] = val;
          }
          return WeightSpec::step(std::move(breaks), std::move(values));
        } else {
          return WeightSpec::zero();
        }
      },
      w.variant());
}

}  // namespace hardycone
