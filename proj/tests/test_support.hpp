// Shared independent oracles for the test suite.  These deliberately avoid
// the library's Gauss-panel machinery: Richardson-extrapolated Simpson on a
// linear mesh, plus a dense scan maximizer.
#pragma once

#include <cmath>
#include <functional>
#include <vector>

namespace testoracle {

// adaptive Simpson on [a, b] (finite), independent of the library quadrature
inline double simpson(const std::function<double(double)>& f, double a, double b, double tol = 1e-11,
                      int depth = 40) {
  auto rule = [&f](double l, double r) {
    double m = 0.5 * (l + r);
    return (r - l) / 6.0 * (f(l) + 4.0 * f(m) + f(r));
  };
  std::function<double(double, double, double, int)> rec = [&](double l, double r, double whole,
                                                               int d) -> double {
    double m = 0.5 * (l + r);
    double left = rule(l, m), right = rule(m, r);
    if (d <= 0 || std::abs(left + right - whole) < 15.0 * tol * (std::abs(left + right) + 1e-300))
      return left + right + (left + right - whole) / 15.0;
    return rec(l, m, left, d - 1) + rec(m, r, right, d - 1);
  };
  return rec(a, b, rule(a, b), depth);
}

// dense log-spaced scan maximizer on [a, b]
inline double dense_max(const std::function<double(double)>& f, double a, double b, int n = 200000) {
  double best = 0.0;
  for (int i = 0; i <= n; ++i) {
    double x = a * std::pow(b / a, double(i) / n);
    best = std::max(best, f(x));
  }
  return best;
}

}  // namespace testoracle
