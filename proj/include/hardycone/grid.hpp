// Log-spaced grids on (0, inf).
#pragma once

#include <cmath>
#include <vector>

#include "hardycone/errors.hpp"

namespace hardycone {

struct Grid {
  double a = 0.0, b = 0.0;
  std::vector<double> points;  // strictly increasing, points.front()=a, back()=b

  size_t size() const { return points.size(); }
  size_t cells() const { return points.size() - 1; }

  // index of the cell containing x, clamped to [0, cells()-1]
  size_t cell_of(double x) const {
    if (x <= points.front()) return 0;
    if (x >= points.back()) return cells() - 1;
    size_t lo = 0, hi = cells() - 1;
    while (lo < hi) {
      size_t mid = (lo + hi + 1) / 2;
      if (points[mid] <= x) lo = mid; else hi = mid - 1;
    }
    return lo;
  }

  // Nested refinement: split every cell at its geometric midpoint (2n-1 points).
  Grid refined() const;
};

inline Grid make_log_grid(double a, double b, int n) {
  if (!(a > 0.0 && a < b) || n < 2) throw invalid_argument("make_log_grid requires 0 < a < b and n >= 2");
  Grid g;
  g.a = a;
  g.b = b;
  g.points.resize(static_cast<size_t>(n));
  double ratio = b / a;
  for (int i = 0; i < n; ++i) g.points[static_cast<size_t>(i)] = a * std::pow(ratio, double(i) / double(n - 1));
  g.points.front() = a;
  g.points.back() = b;
  return g;
}

inline Grid Grid::refined() const {
  Grid g;
  g.a = a;
  g.b = b;
  g.points.reserve(2 * points.size() - 1);
  for (size_t i = 0; i + 1 < points.size(); ++i) {
    g.points.push_back(points[i]);
    g.points.push_back(std::sqrt(points[i] * points[i + 1]));
  }
  g.points.push_back(points.back());
  return g;
}

}  // namespace hardycone
