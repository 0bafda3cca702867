// Quadrature on (0, inf) for power-like integrands: composite Gauss-Legendre
// in log coordinates, adaptive panels, and head/tail integrals toward 0 and
// inf driven by numeric power-asymptote probing (the weight family is exactly
// a pure power outside a bounded interval, so the probes terminate).
#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <vector>

#include "hardycone/errors.hpp"
#include "hardycone/extended.hpp"

namespace hardycone {

using RealFn = std::function<double(double)>;

namespace detail {

// Gauss-Legendre nodes/weights on [-1,1], computed once via Newton iteration.
inline const std::vector<std::pair<double, double>>& gauss_rule(int n) {
  static std::vector<std::pair<double, double>> rules[33];
  auto& r = rules[n];
  if (r.empty()) {
    r.resize(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
      double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
      double pp = 0.0;
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0, p1 = 0.0;
        for (int j = 0; j < n; ++j) {
          double p2 = p1;
          p1 = p0;
          p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
        }
        pp = n * (x * p0 - p1) / (x * x - 1.0);
        double dx = p0 / pp;
        x -= dx;
        if (std::abs(dx) < 1e-15) break;
      }
      r[static_cast<size_t>(i)] = {x, 2.0 / ((1.0 - x * x) * pp * pp)};
    }
  }
  return r;
}

}  // namespace detail

// int_lo^hi f(x) dx via an n-point Gauss rule in y = log x.
inline double gauss_panel_log(const RealFn& f, double lo, double hi, int n = 8) {
  if (!(lo > 0.0) || hi <= lo) return 0.0;
  double yl = std::log(lo), yh = std::log(hi);
  double c = 0.5 * (yh - yl), m = 0.5 * (yh + yl);
  double s = 0.0;
  for (const auto& [t, w] : detail::gauss_rule(n)) {
    double x = std::exp(m + c * t);
    double v = f(x);
    if (std::isinf(v)) return kInf;
    s += w * v * x;
  }
  return s * c;
}

// Adaptive panel integral on [lo, hi]: split in log space until the G8/G16
// estimates agree to rel_tol (with absolute floor).
inline double integrate_adaptive_log(const RealFn& f, double lo, double hi, double rel_tol = 1e-10,
                                     int max_depth = 24) {
  if (!(lo > 0.0) || hi <= lo) return 0.0;
  struct Rec {
    const RealFn& f;
    double tol;
    double run(double a, double b, int depth) const {
      double c8 = gauss_panel_log(f, a, b, 8);
      double c16 = gauss_panel_log(f, a, b, 16);
      if (std::isinf(c8) || std::isinf(c16)) return kInf;
      if (depth <= 0 || std::abs(c16 - c8) <= tol * (std::abs(c16) + 1e-300)) return c16;
      double mid = std::sqrt(a * b);
      if (!(mid > a && mid < b)) return c16;
      double l = run(a, mid, depth - 1);
      double r = run(mid, b, depth - 1);
      return l + r;
    }
  };
  return Rec{f, rel_tol}.run(lo, hi, max_depth);
}

// Probe result for f near 0 or inf: f(x) ~ coeff * x^exponent.
struct ProbedAsymptote {
  double coeff = 0.0;
  double exponent = 0.0;
  bool is_zero = true;       // f vanishes in the probed range
  bool stable = false;       // log-slope stabilized
  double edge = 0.0;         // innermost probe location
};

namespace detail {

inline ProbedAsymptote probe_power(const RealFn& f, double x0, bool toward_zero) {
  ProbedAsymptote out;
  const double step = toward_zero ? 0.1 : 10.0;
  double x = x0;
  double prev_slope = kInf;
  int stable_count = 0;
  double fx_prev = f(x);
  for (int k = 0; k < 70; ++k) {
    double xn = x * step;
    double fxn = f(xn);
    out.edge = xn;
    if (std::isinf(fx_prev) || std::isinf(fxn)) {
      out.is_zero = false;
      out.stable = false;
      out.coeff = kInf;
      return out;
    }
    if (fx_prev <= 1e-290 && fxn <= 1e-290) {
      out.is_zero = true;
      out.stable = true;
      return out;
    }
    if (fx_prev > 0.0 && fxn > 0.0) {
      double slope = std::log(fxn / fx_prev) / std::log(xn / x);
      if (std::abs(slope - prev_slope) < 1e-9) {
        if (++stable_count >= 2) {
          out.is_zero = false;
          out.stable = true;
          out.exponent = slope;
          out.coeff = fxn / std::pow(xn, slope);
          return out;
        }
      } else {
        stable_count = 0;
      }
      prev_slope = slope;
    } else {
      stable_count = 0;
      prev_slope = kInf;
    }
    x = xn;
    fx_prev = fxn;
  }
  out.is_zero = fx_prev <= 1e-290;
  out.stable = false;
  return out;
}

}  // namespace detail

// int_0^x0 f, for integrands that are eventually a pure power near 0.
// Splits off panels decade by decade and closes with the analytic remainder
// of the detected power; +inf when the power is non-integrable.
inline double integrate_to_zero(const RealFn& f, double x0, double rel_tol = 1e-10) {
  if (!(x0 > 0.0)) return 0.0;
  auto asym = detail::probe_power(f, x0, /*toward_zero=*/true);
  if (asym.is_zero && asym.stable) {
    // support starts above the probe edge; integrate the bounded part only
    return integrate_adaptive_log(f, asym.edge, x0, rel_tol);
  }
  if (!asym.stable) {
    if (std::isinf(asym.coeff)) return kInf;
    // no stable power found; integrate deep and accept the truncation
    return integrate_adaptive_log(f, std::max(asym.edge, 1e-120), x0, rel_tol);
  }
  if (asym.exponent <= -1.0 + 1e-12 && asym.coeff > 0.0) return kInf;
  double cut = asym.edge;
  double body = integrate_adaptive_log(f, cut, x0, rel_tol);
  double remainder = f(cut) * cut / (asym.exponent + 1.0);
  return body + remainder;
}

// int_x0^inf f, mirror of integrate_to_zero.
inline double integrate_to_inf(const RealFn& f, double x0, double rel_tol = 1e-10) {
  if (!(x0 > 0.0)) return 0.0;
  auto asym = detail::probe_power(f, x0, /*toward_zero=*/false);
  if (asym.is_zero && asym.stable) {
    return integrate_adaptive_log(f, x0, asym.edge, rel_tol);
  }
  if (!asym.stable) {
    if (std::isinf(asym.coeff)) return kInf;
    return integrate_adaptive_log(f, x0, std::min(asym.edge, 1e120), rel_tol);
  }
  if (asym.exponent >= -1.0 - 1e-12 && asym.coeff > 0.0) return kInf;
  double cut = asym.edge;
  double body = integrate_adaptive_log(f, x0, cut, rel_tol);
  double remainder = -f(cut) * cut / (asym.exponent + 1.0);
  return body + remainder;
}

// Full-line integral of a power-like integrand.
inline double integrate_line(const RealFn& f, double lo, double hi, double rel_tol = 1e-10) {
  double head = integrate_to_zero(f, lo, rel_tol);
  if (std::isinf(head)) return kInf;
  double body = integrate_adaptive_log(f, lo, hi, rel_tol);
  if (std::isinf(body)) return kInf;
  double tail = integrate_to_inf(f, hi, rel_tol);
  return head + body + tail;
}

// esssup of f on (0, x0): sample toward zero with power-probe limits.
inline double sup_toward_zero(const RealFn& f, double x0) {
  auto asym = detail::probe_power(f, x0, true);
  if (!asym.stable) return std::isinf(asym.coeff) ? kInf : f(asym.edge);
  if (asym.is_zero) return 0.0;
  if (asym.exponent < 0.0) return kInf;
  if (asym.exponent == 0.0) return asym.coeff;
  return f(asym.edge);  // decays toward 0; boundary sample dominates below x0
}

inline double sup_toward_inf(const RealFn& f, double x0) {
  auto asym = detail::probe_power(f, x0, false);
  if (!asym.stable) return std::isinf(asym.coeff) ? kInf : f(asym.edge);
  if (asym.is_zero) return 0.0;
  if (asym.exponent > 0.0) return kInf;
  if (asym.exponent == 0.0) return asym.coeff;
  return f(asym.edge);
}

}  // namespace hardycone
