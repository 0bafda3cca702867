// Monotone cubic (Fritsch-Carlson) interpolation of tabulated monotone data.
#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "hardycone/errors.hpp"

namespace hardycone {

class MonotoneCubic {
 public:
  MonotoneCubic() = default;
  MonotoneCubic(std::vector<double> x, std::vector<double> y) : x_(std::move(x)), y_(std::move(y)) {
    if (x_.size() != y_.size() || x_.size() < 2) throw invalid_argument("interpolation needs >= 2 nodes");
    size_t n = x_.size();
    std::vector<double> d(n - 1);
    for (size_t i = 0; i + 1 < n; ++i) d[i] = (y_[i + 1] - y_[i]) / (x_[i + 1] - x_[i]);
    m_.assign(n, 0.0);
    m_[0] = d[0];
    m_[n - 1] = d[n - 2];
    for (size_t i = 1; i + 1 < n; ++i) {
      if (d[i - 1] * d[i] <= 0.0) {
        m_[i] = 0.0;
      } else {
        // harmonic mean keeps monotonicity
        double w1 = 2.0 * (x_[i + 1] - x_[i]) + (x_[i] - x_[i - 1]);
        double w2 = (x_[i + 1] - x_[i]) + 2.0 * (x_[i] - x_[i - 1]);
        m_[i] = (w1 + w2) / (w1 / d[i - 1] + w2 / d[i]);
      }
    }
    // clamp endpoint slopes (Fritsch-Carlson condition)
    auto clamp_end = [&](size_t i, double delta) {
      if (delta == 0.0) m_[i] = 0.0;
      else if (m_[i] / delta < 0.0) m_[i] = 0.0;
      else if (std::abs(m_[i]) > 3.0 * std::abs(delta)) m_[i] = 3.0 * delta;
    };
    clamp_end(0, d[0]);
    clamp_end(n - 1, d[n - 2]);
  }

  double operator()(double x) const {
    size_t n = x_.size();
    if (x <= x_.front()) return y_.front();
    if (x >= x_.back()) return y_.back();
    size_t lo = 0, hi = n - 1;
    while (lo + 1 < hi) {
      size_t mid = (lo + hi) / 2;
      if (x_[mid] <= x) lo = mid; else hi = mid;
    }
    double h = x_[lo + 1] - x_[lo];
    double t = (x - x_[lo]) / h;
    double t2 = t * t, t3 = t2 * t;
    double h00 = 2 * t3 - 3 * t2 + 1, h10 = t3 - 2 * t2 + t;
    double h01 = -2 * t3 + 3 * t2, h11 = t3 - t2;
    return h00 * y_[lo] + h10 * h * m_[lo] + h01 * y_[lo + 1] + h11 * h * m_[lo + 1];
  }

 private:
  std::vector<double> x_, y_, m_;
};

}  // namespace hardycone
