// Cumulative integrals as evaluable functions.  Base weights use their exact
// closed forms; arbitrary densities are tabulated on a shared log grid
// (node values by adaptive Gauss panels, off-node values by monotone cubic
// interpolation in log-log coordinates, beyond-grid values by the probed
// power asymptote).  Tables are warmed eagerly; reads are then side-effect
// free and safe to share.
#pragma once

#include <cmath>
#include <memory>
#include <vector>

#include "hardycone/grid.hpp"
#include "hardycone/interp.hpp"
#include "hardycone/quadrature.hpp"
#include "hardycone/weights.hpp"

namespace hardycone {

enum class Direction { Lower, Upper };

class CumulativeProfile {
 public:
  CumulativeProfile() = default;

  // Exact closed-form profile of a base weight.
  CumulativeProfile(const WeightSpec& w, Direction d) : dir_(d), spec_(w), exact_(true) {}

  // Tabulated profile of a nonnegative density on the shared grid.
  CumulativeProfile(RealFn density, Direction d, const Grid& grid, double rel_tol = 1e-10)
      : dir_(d), exact_(false) {
    build(std::move(density), grid, rel_tol);
  }

  // Lower cumulative anchored at the grid start instead of 0: values give
  // int_a^t density, and evaluation below a returns the (negative) partial
  // integral.  Differences F(t2) - F(t1) of an anchored profile stay finite
  // even when the origin integral diverges.
  static CumulativeProfile anchored_lower(RealFn density, const Grid& grid, double rel_tol = 1e-10) {
    CumulativeProfile p;
    p.dir_ = Direction::Lower;
    p.exact_ = false;
    p.anchored_ = true;
    p.build(std::move(density), grid, rel_tol);
    return p;
  }

  bool exact() const { return exact_; }
  Direction direction() const { return dir_; }

  // Whole-profile divergence: for Lower, the origin integral diverges; for
  // Upper, the tail integral diverges.  Every value is then +inf.
  bool diverged() const {
    if (exact_) {
      double probe = dir_ == Direction::Lower ? spec_.integrate_lower(1.0) : spec_.integrate_upper(1.0);
      return std::isinf(probe);
    }
    return diverged_;
  }

  double operator()(double t) const {
    if (exact_) return dir_ == Direction::Lower ? spec_.integrate_lower(t) : spec_.integrate_upper(t);
    if (diverged_) return kInf;
    return dir_ == Direction::Lower ? eval_lower(t) : eval_upper(t);
  }

  // Node values (tabulated profiles only), exposed for identity tests.
  const std::vector<double>& node_values() const { return values_; }
  const std::vector<double>& nodes() const { return nodes_; }

 private:
  void build(RealFn density, const Grid& grid, double rel_tol) {
    nodes_ = grid.points;
    size_t n = nodes_.size();
    values_.assign(n, 0.0);
    density_ = std::move(density);

    head_ = anchored_ ? 0.0 : integrate_to_zero(density_, nodes_.front(), rel_tol);
    tail_ = integrate_to_inf(density_, nodes_.back(), rel_tol);
    zero_side_ = detail::probe_power(density_, nodes_.front(), true);
    inf_side_ = detail::probe_power(density_, nodes_.back(), false);

    if (dir_ == Direction::Lower) {
      if (std::isinf(head_)) {
        diverged_ = true;
        return;
      }
      values_[0] = head_;
      for (size_t i = 0; i + 1 < n; ++i) {
        double p = std::isinf(values_[i])
                       ? kInf
                       : values_[i] + integrate_adaptive_log(density_, nodes_[i], nodes_[i + 1], rel_tol);
        values_[i + 1] = p;
      }
    } else {
      if (std::isinf(tail_)) {
        diverged_ = true;
        return;
      }
      values_[n - 1] = tail_;
      for (size_t i = n - 1; i > 0; --i) {
        double p = std::isinf(values_[i])
                       ? kInf
                       : values_[i] + integrate_adaptive_log(density_, nodes_[i - 1], nodes_[i], rel_tol);
        values_[i - 1] = p;
      }
    }
    build_interp();
  }

  void build_interp() {
    // interpolate on the strictly positive + finite stretch in log-log
    size_t n = nodes_.size();
    size_t lo = 0, hi = n;  // [lo, hi)
    if (dir_ == Direction::Lower) {
      while (lo < n && values_[lo] <= 0.0) ++lo;
      while (hi > lo && std::isinf(values_[hi - 1])) --hi;
    } else {
      while (lo < n && std::isinf(values_[lo])) ++lo;
      while (hi > lo && values_[hi - 1] <= 0.0) --hi;
    }
    interp_lo_ = lo;
    interp_hi_ = hi;
    if (hi - lo >= 2) {
      std::vector<double> lx(hi - lo), ly(hi - lo);
      for (size_t i = lo; i < hi; ++i) {
        lx[i - lo] = std::log(nodes_[i]);
        ly[i - lo] = std::log(values_[i]);
      }
      interp_ = std::make_shared<MonotoneCubic>(std::move(lx), std::move(ly));
    }
  }

  double eval_lower(double t) const {
    size_t n = nodes_.size();
    if (t <= nodes_.front()) {
      if (t == nodes_.front()) return values_.front();
      if (anchored_) return -integrate_adaptive_log(density_, std::max(t, 1e-300), nodes_.front());
      if (zero_side_.is_zero || !zero_side_.stable) {
        // inside the probed range everything is either zero or unresolved;
        // fall back to a direct partial integral
        return std::max(0.0, head_ - integrate_adaptive_log(density_, t, nodes_.front()));
      }
      return zero_side_.coeff * std::pow(t, zero_side_.exponent + 1.0) / (zero_side_.exponent + 1.0);
    }
    if (t >= nodes_.back()) {
      if (std::isinf(values_.back())) return kInf;
      if (t == nodes_.back()) return values_.back();
      return values_.back() + power_continuation(inf_side_, nodes_.back(), t);
    }
    size_t i = cell_index(t);
    if (std::isinf(values_[i])) return kInf;
    if (i + 1 >= interp_hi_ && std::isinf(values_[std::min(i + 1, n - 1)])) {
      return values_[i] + integrate_adaptive_log(density_, nodes_[i], t);
    }
    if (interp_ && i >= interp_lo_ && i + 1 < interp_hi_) {
      return std::exp((*interp_)(std::log(t)));
    }
    // bridging a zero stretch: integrate the partial panel directly
    return values_[i] + integrate_adaptive_log(density_, nodes_[i], t);
  }

  double eval_upper(double t) const {
    if (t >= nodes_.back()) {
      if (t == nodes_.back()) return values_.back();
      if (inf_side_.is_zero || !inf_side_.stable)
        return std::max(0.0, tail_ - integrate_adaptive_log(density_, nodes_.back(), t));
      // remaining tail of the asymptotic power
      double e = inf_side_.exponent;
      return -inf_side_.coeff * std::pow(t, e + 1.0) / (e + 1.0);
    }
    if (t <= nodes_.front()) {
      if (t == nodes_.front()) return values_.front();
      if (std::isinf(values_.front())) return kInf;
      return values_.front() + head_partial(t);
    }
    size_t i = cell_index(t);
    if (std::isinf(values_[i + 1])) return kInf;
    if (interp_ && i >= interp_lo_ && i + 1 < interp_hi_) {
      return std::exp((*interp_)(std::log(t)));
    }
    return values_[i + 1] + integrate_adaptive_log(density_, t, nodes_[i + 1]);
  }

  // int_t^{a} density for t below the grid (Upper profiles)
  double head_partial(double t) const {
    if (zero_side_.is_zero && zero_side_.stable) {
      double support = zero_side_.edge;
      if (t >= support) return integrate_adaptive_log(density_, t, nodes_.front());
      return integrate_adaptive_log(density_, support, nodes_.front());
    }
    return std::max(0.0, head_ - (std::isinf(head_) ? 0.0 : integrate_to_zero(density_, t)));
  }

  static double power_continuation(const ProbedAsymptote& a, double from, double to) {
    if (a.is_zero || !a.stable) return 0.0;
    double e = a.exponent;
    if (e >= -1.0 - 1e-12 && e <= -1.0 + 1e-12) return a.coeff * std::log(to / from);
    return a.coeff * (std::pow(to, e + 1.0) - std::pow(from, e + 1.0)) / (e + 1.0);
  }

  size_t cell_index(double t) const {
    size_t lo = 0, hi = nodes_.size() - 1;
    while (lo + 1 < hi) {
      size_t mid = (lo + hi) / 2;
      if (nodes_[mid] <= t) lo = mid; else hi = mid;
    }
    return lo;
  }

  Direction dir_ = Direction::Lower;
  WeightSpec spec_;
  bool exact_ = false;
  bool anchored_ = false;
  bool diverged_ = false;
  RealFn density_;
  std::vector<double> nodes_, values_;
  double head_ = 0.0, tail_ = 0.0;
  ProbedAsymptote zero_side_, inf_side_;
  std::shared_ptr<MonotoneCubic> interp_;
  size_t interp_lo_ = 0, interp_hi_ = 0;
};

}  // namespace hardycone
