// Best-constant characterizations for weighted Hardy/Copson inequalities on
// cones of monotone functions and for the iterated Hardy-type inequalities.
// Supremum terms are scanned on a log grid and refined by golden section in
// log coordinates; integral terms use adaptive panels with probed power
// asymptotes toward 0 and inf.  Suprema attained at the boundary are flagged
// and reported with the probed limiting value.
#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "hardycone/params.hpp"
#include "hardycone/profile.hpp"
#include "hardycone/transforms.hpp"

namespace hardycone {

struct ScanContext {
  Grid grid;
  double quad_tol = 1e-8;
  std::vector<double> extra_points;  // weight breakpoints etc., merged into scans

  static ScanContext defaults() { return ScanContext{make_log_grid(1e-8, 1e8, 4096), 1e-8, {}}; }
  static ScanContext with_grid(double a, double b, int n) {
    return ScanContext{make_log_grid(a, b, n), 1e-8, {}};
  }
};

struct GridInfo {
  double a = 0.0, b = 0.0;
  int n = 0;
};

enum class Exactness { Equal, Equivalent };

struct ConstantReport {
  ExtendedValue total;
  std::vector<std::pair<std::string, double>> terms;  // insertion-ordered
  Regime regime;
  Exactness exactness = Exactness::Equivalent;
  GridInfo grid;
  std::vector<std::string> flags;

  double term(const std::string& name) const {
    for (const auto& [k, v] : terms)
      if (k == name) return v;
    throw invalid_argument("no term named " + name);
  }
  bool has_flag_prefix(const std::string& prefix) const {
    for (const auto& f : flags)
      if (f.rfind(prefix, 0) == 0) return true;
    return false;
  }
};

namespace detail {

inline std::vector<double> scan_points(const ScanContext& ctx, size_t stride = 1) {
  std::vector<double> pts;
  pts.reserve(ctx.grid.size() / stride + 8 + 3 * ctx.extra_points.size());
  for (size_t i = 0; i < ctx.grid.size(); i += stride) pts.push_back(ctx.grid.points[i]);
  if (stride > 1 && pts.back() != ctx.grid.b) pts.push_back(ctx.grid.b);
  for (double e : ctx.extra_points) {
    if (e > ctx.grid.a && e < ctx.grid.b) {
      pts.push_back(e * (1.0 - 1e-9));
      pts.push_back(e);
      pts.push_back(e * (1.0 + 1e-9));
    }
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

inline double golden_refine_log(const RealFn& f, double lo, double hi, double best_val) {
  const double inv_phi = 0.6180339887498949;
  double a = std::log(lo), b = std::log(hi);
  double x1 = b - inv_phi * (b - a), x2 = a + inv_phi * (b - a);
  double f1 = f(std::exp(x1)), f2 = f(std::exp(x2));
  for (int it = 0; it < 60 && b - a > 1e-13; ++it) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = f(std::exp(x2));
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = f(std::exp(x1));
    }
  }
  return std::max({best_val, f1, f2});
}

struct SupOutcome {
  double value = 0.0;
  double arg = 0.0;
  bool boundary_zero = false;
  bool boundary_inf = false;
};

// sup over (0, inf): grid scan + golden refinement + boundary probes.
inline SupOutcome sup_term(const RealFn& f, const ScanContext& ctx, size_t stride = 1) {
  SupOutcome out;
  auto pts = scan_points(ctx, stride);
  size_t best = 0;
  double best_val = -1.0;
  for (size_t i = 0; i < pts.size(); ++i) {
    double v = f(pts[i]);
    if (std::isinf(v)) return SupOutcome{kInf, pts[i], false, false};
    if (v > best_val) {
      best_val = v;
      best = i;
    }
  }
  double lo = pts[best > 0 ? best - 1 : 0];
  double hi = pts[std::min(best + 1, pts.size() - 1)];
  double refined = best_val;
  if (hi > lo) refined = golden_refine_log(f, lo, hi, best_val);
  out.value = refined;
  out.arg = pts[best];

  double z = sup_toward_zero(f, ctx.grid.a);
  double w = sup_toward_inf(f, ctx.grid.b);
  if (std::isinf(z) || z > refined * (1.0 + 1e-9)) {
    out.boundary_zero = true;
    out.value = std::max(out.value, z);
  }
  if (std::isinf(w) || w > out.value * (1.0 + 1e-9)) {
    out.boundary_inf = true;
    out.value = std::max(out.value, w);
  }
  // trend check: max sitting at the very edge of the scan is boundary-suspect
  if (best == 0 && f(pts[0]) >= f(pts[1]) && z >= refined * (1.0 - 1e-9)) out.boundary_zero = true;
  if (best + 1 == pts.size() && f(pts[best]) >= f(pts[best - 1]) && w >= refined * (1.0 - 1e-9))
    out.boundary_inf = true;
  return out;
}

// integral over (0, inf) split at the declared breakpoints
inline double integral_term(const RealFn& f, const ScanContext& ctx) {
  std::vector<double> cuts{ctx.grid.a};
  for (double e : ctx.extra_points)
    if (e > ctx.grid.a && e < ctx.grid.b) cuts.push_back(e);
  cuts.push_back(ctx.grid.b);
  std::sort(cuts.begin(), cuts.end());
  double head = integrate_to_zero(f, cuts.front(), ctx.quad_tol);
  if (std::isinf(head)) return kInf;
  double total = head;
  for (size_t i = 0; i + 1 < cuts.size(); ++i) {
    double part = integrate_adaptive_log(f, cuts[i], cuts[i + 1], ctx.quad_tol);
    if (std::isinf(part)) return kInf;
    total += part;
  }
  double tail = integrate_to_inf(f, cuts.back(), ctx.quad_tol);
  return total + tail;
}

// running essential supremum over (0, t] tabulated on the scan grid
class RunningSup {
 public:
  RunningSup(const RealFn& g, const ScanContext& ctx, bool from_zero) : from_zero_(from_zero), g_(g) {
    nodes_ = scan_points(ctx, 1);
    vals_.resize(nodes_.size());
    auto cell_sup = [&](double a, double b) {
      double m = 0.0;
      for (int k = 0; k <= 4; ++k) m = std::max(m, g(a * std::pow(b / a, k / 4.0)));
      return m;
    };
    if (from_zero) {
      double run = sup_toward_zero(g, nodes_.front());
      run = std::max(run, g(nodes_.front()));
      vals_[0] = run;
      for (size_t i = 0; i + 1 < nodes_.size(); ++i) {
        run = std::max(run, cell_sup(nodes_[i], nodes_[i + 1]));
        vals_[i + 1] = run;
      }
    } else {
      double run = sup_toward_inf(g, nodes_.back());
      run = std::max(run, g(nodes_.back()));
      vals_.back() = run;
      for (size_t i = nodes_.size() - 1; i > 0; --i) {
        run = std::max(run, cell_sup(nodes_[i - 1], nodes_[i]));
        vals_[i - 1] = run;
      }
    }
  }

  double operator()(double t) const {
    if (from_zero_) {
      if (t <= nodes_.front()) return std::max(vals_.front(), g_(std::max(t, 1e-300)));
      size_t i = index_below(t);
      return std::max(vals_[i], g_(t));
    }
    if (t >= nodes_.back()) return std::max(vals_.back(), g_(t));
    size_t i = index_below(t);
    return std::max(vals_[std::min(i + 1, vals_.size() - 1)], g_(t));
  }

 private:
  size_t index_below(double t) const {
    size_t lo = 0, hi = nodes_.size() - 1;
    if (t <= nodes_.front()) return 0;
    if (t >= nodes_.back()) return nodes_.size() - 1;
    while (lo + 1 < hi) {
      size_t mid = (lo + hi) / 2;
      if (nodes_[mid] <= t) lo = mid; else hi = mid;
    }
    return lo;
  }
  bool from_zero_;
  RealFn g_;
  std::vector<double> nodes_;
  std::vector<double> vals_;
};

inline RealFn lower_profile_fn(RealFn density, const ScanContext& ctx) {
  auto prof = std::make_shared<CumulativeProfile>(std::move(density), Direction::Lower, ctx.grid,
                                                  ctx.quad_tol);
  return [prof](double t) { return (*prof)(t); };
}
inline RealFn upper_profile_fn(RealFn density, const ScanContext& ctx) {
  auto prof = std::make_shared<CumulativeProfile>(std::move(density), Direction::Upper, ctx.grid,
                                                  ctx.quad_tol);
  return [prof](double t) { return (*prof)(t); };
}
inline RealFn anchored_profile_fn(RealFn density, const ScanContext& ctx) {
  auto prof = std::make_shared<CumulativeProfile>(
      CumulativeProfile::anchored_lower(std::move(density), ctx.grid, ctx.quad_tol));
  return [prof](double t) { return (*prof)(t); };
}

}  // namespace detail

// -- weighted Lebesgue norm ---------------------------------------------------

struct Interval {
  double lo = 0.0;
  double hi = kInf;
};

// (int_I |f|^p w)^(1/p) for p < inf; esssup_I |f| * w for p = inf (the weight
// enters multiplicatively in the esup norm).
inline double lebesgue_norm(const RealFn& f, double p, const WeightSpec& w, Interval I,
                            const ScanContext& ctx) {
  if (!(p > 0.0)) throw invalid_argument("lebesgue_norm requires p > 0");
  if (std::isinf(p)) {
    RealFn g = [&f, &w](double x) { return ext_mul(std::abs(f(x)), w.evaluate(x)); };
    ScanContext local = ctx;
    for (double b : w.breakpoints()) local.extra_points.push_back(b);
    double m = 0.0;
    for (double t : detail::scan_points(local)) {
      if (t <= I.lo || t >= I.hi) continue;
      m = std::max(m, g(t));
      if (std::isinf(m)) return kInf;
    }
    if (I.lo == 0.0) m = std::max(m, sup_toward_zero(g, ctx.grid.a));
    else m = std::max(m, g(I.lo * (1.0 + 1e-12)));
    if (std::isinf(I.hi)) m = std::max(m, sup_toward_inf(g, ctx.grid.b));
    else m = std::max(m, g(I.hi * (1.0 - 1e-12)));
    return m;
  }
  RealFn integrand = [&f, &w, p](double x) { return ext_mul(ext_pow(std::abs(f(x)), p), w.evaluate(x)); };
  double lo = std::max(I.lo, 0.0), hi = I.hi;
  double total = 0.0;
  std::vector<double> cuts;
  cuts.push_back(std::max(lo, ctx.grid.a));
  for (double e : w.breakpoints())
    if (e > cuts.front() && (std::isinf(hi) ? e < ctx.grid.b : e < hi)) cuts.push_back(e);
  cuts.push_back(std::isinf(hi) ? std::max(ctx.grid.b, cuts.front() * 2.0) : hi);
  std::sort(cuts.begin(), cuts.end());
  if (lo == 0.0) {
    double head = integrate_to_zero(integrand, cuts.front(), ctx.quad_tol);
    if (std::isinf(head)) return kInf;
    total += head;
  }
  for (size_t i = 0; i + 1 < cuts.size(); ++i) {
    double part = integrate_adaptive_log(integrand, cuts[i], cuts[i + 1], ctx.quad_tol);
    if (std::isinf(part)) return kInf;
    total += part;
  }
  if (std::isinf(hi)) total += integrate_to_inf(integrand, cuts.back(), ctx.quad_tol);
  return ext_pow(total, 1.0 / p);
}

// -- the case engines ---------------------------------------------------------

namespace detail {

// Inputs of the decreasing-cone characterization read as functions: Ucum is
// the lower cumulative of the operator weight, Vcum the denominator
// cumulative, v_meas the density of the right-hand measure, u_den the
// operator weight density.  v_raw enables the p = inf cases.
struct CharInput {
  RealFn Ucum;
  RealFn Vcum;
  RealFn v_meas;
  RealFn u_den;
  WeightSpec w;
  double p = 1.0, q = 1.0;
  RealFn v_raw;  // null => p = inf regimes rejected
};

inline void record_sup(ConstantReport& rep, const std::string& name, const SupOutcome& s) {
  rep.terms.emplace_back(name, s.value);
  if (s.boundary_zero) rep.flags.push_back("boundary_supremum_zero:" + name);
  if (s.boundary_inf) rep.flags.push_back("boundary_supremum_inf:" + name);
}

inline void finish_total(ConstantReport& rep) {
  double t = 0.0;
  for (const auto& [k, v] : rep.terms) t += v;
  rep.total = ExtendedValue(t);
}

// Monotone-cone Hardy characterization, decreasing cone (lower-cumulative
// orientation).  Case labels follow classify().
inline ConstantReport characterize_dec(const CharInput& in, const ScanContext& ctx) {
  ConstantReport rep;
  rep.regime = classify(in.p, in.q);
  rep.grid = GridInfo{ctx.grid.a, ctx.grid.b, static_cast<int>(ctx.grid.size())};
  rep.exactness = rep.regime.index <= 3 ? Exactness::Equivalent : Exactness::Equal;
  const double p = in.p, q = in.q;
  ScanContext sctx = ctx;
  for (double b : in.w.breakpoints()) sctx.extra_points.push_back(b);

  auto wval = [w = in.w](double t) { return w.evaluate(t); };
  auto Wup = [w = in.w](double t) { return w.integrate_upper(t); };

  switch (rep.regime.index) {
    case 1: {  // 1 < p <= q < inf : A0 + A1
      double pc = p / (p - 1.0);
      RealFn P0 = lower_profile_fn(
          [U = in.Ucum, w = in.w, q](double t) { return ext_mul(ext_pow(U(t), q), w.evaluate(t)); },
          sctx);
      RealFn P1 = lower_profile_fn(
          [U = in.Ucum, V = in.Vcum, vm = in.v_meas, pc](double t) {
            return ext_mul(ext_pow(ext_div(U(t), V(t)), pc), vm(t));
          },
          sctx);
      auto A0 = sup_term(
          [&](double t) { return ext_mul(ext_pow(P0(t), 1.0 / q), ext_pow(in.Vcum(t), -1.0 / p)); },
          sctx);
      auto A1 = sup_term(
          [&](double t) { return ext_mul(ext_pow(Wup(t), 1.0 / q), ext_pow(P1(t), 1.0 / pc)); }, sctx);
      record_sup(rep, "A0", A0);
      record_sup(rep, "A1", A1);
      break;
    }
    case 2:    // q < p < inf, 1 < p : B0 + B1
    case 3: {  // q < p <= 1 : B0 + C1
      double r = 1.0 / (1.0 / q - 1.0 / p);
      RealFn P0 = lower_profile_fn(
          [U = in.Ucum, w = in.w, q](double t) { return ext_mul(ext_pow(U(t), q), w.evaluate(t)); },
          sctx);
      double B0 = integral_term(
          [&](double t) {
            return ext_mul(ext_mul(ext_pow(in.Vcum(t), -r / p), ext_pow(P0(t), r / p)),
                           ext_mul(ext_pow(in.Ucum(t), q), wval(t)));
          },
          sctx);
      rep.terms.emplace_back("B0", ext_pow(B0, 1.0 / r));
      if (rep.regime.index == 2) {
        double pc = p / (p - 1.0);
        RealFn P1 = lower_profile_fn(
            [U = in.Ucum, V = in.Vcum, vm = in.v_meas, pc](double t) {
              return ext_mul(ext_pow(ext_div(U(t), V(t)), pc), vm(t));
            },
            sctx);
        double B1 = integral_term(
            [&](double t) {
              return ext_mul(ext_mul(ext_pow(Wup(t), r / p), ext_pow(P1(t), r / pc)), wval(t));
            },
            sctx);
        rep.terms.emplace_back("B1", ext_pow(B1, 1.0 / r));
      } else {
        RunningSup RS([U = in.Ucum, V = in.Vcum, p](double t) { return ext_div(ext_pow(U(t), p), V(t)); },
                      sctx, true);
        double C1 = integral_term(
            [&](double t) {
              return ext_mul(ext_mul(ext_pow(RS(t), r / p), ext_pow(Wup(t), r / p)), wval(t));
            },
            sctx);
        rep.terms.emplace_back("C1", ext_pow(C1, 1.0 / r));
      }
      break;
    }
    case 4: {  // p <= q < inf, p <= 1 : D0
      RealFn P0 = lower_profile_fn(
          [U = in.Ucum, w = in.w, q](double t) { return ext_mul(ext_pow(U(t), q), w.evaluate(t)); },
          sctx);
      auto D0 = sup_term(
          [&](double t) {
            double inner = P0(t) + ext_mul(ext_pow(in.Ucum(t), q), Wup(t));
            return ext_mul(ext_pow(in.Vcum(t), -1.0 / p), ext_pow(inner, 1.0 / q));
          },
          sctx);
      record_sup(rep, "D0", D0);
      break;
    }
    case 5: {  // p <= 1, q = inf : E0
      RunningSup RS([U = in.Ucum, w = in.w](double t) { return ext_mul(U(t), w.evaluate(t)); }, sctx,
                    true);
      auto E0 = sup_term(
          [&](double t) {
            double inner = std::max(RS(t), ext_mul(in.Ucum(t), in.w.essential_sup(t, kInf)));
            return ext_mul(ext_pow(in.Vcum(t), -1.0 / p), inner);
          },
          sctx);
      record_sup(rep, "E0", E0);
      break;
    }
    case 6: {  // 1 < p < inf, q = inf : F0
      double pc = p / (p - 1.0);
      RealFn R = anchored_profile_fn(
          [u = in.u_den, V = in.Vcum](double y) { return ext_mul(u(y), ext_div(1.0, V(y))); }, sctx);
      auto inner = [&](double t) {
        double Rt = R(t);
        RealFn g = [&, Rt](double tau) {
          double d = std::isinf(Rt) ? kInf : std::max(0.0, Rt - R(tau));
          return ext_mul(ext_pow(d, pc), in.v_meas(tau));
        };
        double head = integrate_to_zero(g, std::min(t, sctx.grid.a), ctx.quad_tol);
        if (std::isinf(head)) return kInf;
        return head + (t > sctx.grid.a ? integrate_adaptive_log(g, sctx.grid.a, t, ctx.quad_tol) : 0.0);
      };
      auto F0 = sup_term([&](double t) { return ext_mul(wval(t), ext_pow(inner(t), 1.0 / pc)); }, sctx,
                         /*stride=*/16);
      record_sup(rep, "F0", F0);
      break;
    }
    case 7:    // p = inf, 0 < q < inf : G0
    case 8: {  // p = q = inf : H0
      if (!in.v_raw) throw unsupported("p = inf is not supported for this characterization");
      auto RSv = std::make_shared<RunningSup>(in.v_raw, sctx, true);
      RealFn inner = lower_profile_fn(
          [u = in.u_den, RSv](double y) { return ext_div(u(y), (*RSv)(y)); }, sctx);
      if (rep.regime.index == 7) {
        double G0 = integral_term(
            [&](double t) { return ext_mul(ext_pow(inner(t), q), wval(t)); }, sctx);
        rep.terms.emplace_back("G0", ext_pow(G0, 1.0 / q));
      } else {
        auto H0 = sup_term([&](double t) { return ext_mul(inner(t), wval(t)); }, sctx);
        record_sup(rep, "H0", H0);
      }
      break;
    }
    default:
      throw invalid_argument("unreachable regime");
  }
  finish_total(rep);
  return rep;
}

// Mirror engine: increasing cone / upper-cumulative orientation (the starred
// cases).  Ucum and Vcum are upper cumulatives here.
inline ConstantReport characterize_star(const CharInput& in, const ScanContext& ctx) {
  ConstantReport rep;
  rep.regime = classify(in.p, in.q);
  rep.grid = GridInfo{ctx.grid.a, ctx.grid.b, static_cast<int>(ctx.grid.size())};
  rep.exactness = rep.regime.index <= 3 ? Exactness::Equivalent : Exactness::Equal;
  const double p = in.p, q = in.q;
  ScanContext sctx = ctx;
  for (double b : in.w.breakpoints()) sctx.extra_points.push_back(b);

  auto wval = [w = in.w](double t) { return w.evaluate(t); };
  auto Wlow = [w = in.w](double t) { return w.integrate_lower(t); };

  switch (rep.regime.index) {
    case 1: {
      double pc = p / (p - 1.0);
      RealFn P0 = upper_profile_fn(
          [U = in.Ucum, w = in.w, q](double t) { return ext_mul(ext_pow(U(t), q), w.evaluate(t)); },
          sctx);
      RealFn P1 = upper_profile_fn(
          [U = in.Ucum, V = in.Vcum, vm = in.v_meas, pc](double t) {
            return ext_mul(ext_pow(ext_div(U(t), V(t)), pc), vm(t));
          },
          sctx);
      auto A0 = sup_term(
          [&](double t) { return ext_mul(ext_pow(P0(t), 1.0 / q), ext_pow(in.Vcum(t), -1.0 / p)); },
          sctx);
      auto A1 = sup_term(
          [&](double t) { return ext_mul(ext_pow(Wlow(t), 1.0 / q), ext_pow(P1(t), 1.0 / pc)); },
          sctx);
      record_sup(rep, "A0", A0);
      record_sup(rep, "A1", A1);
      break;
    }
    case 2:
    case 3: {
      double r = 1.0 / (1.0 / q - 1.0 / p);
      RealFn P0 = upper_profile_fn(
          [U = in.Ucum, w = in.w, q](double t) { return ext_mul(ext_pow(U(t), q), w.evaluate(t)); },
          sctx);
      double B0 = integral_term(
          [&](double t) {
            return ext_mul(ext_mul(ext_pow(in.Vcum(t), -r / p), ext_pow(P0(t), r / p)),
                           ext_mul(ext_pow(in.Ucum(t), q), wval(t)));
          },
          sctx);
      rep.terms.emplace_back("B0", ext_pow(B0, 1.0 / r));
      if (rep.regime.index == 2) {
        double pc = p / (p - 1.0);
        RealFn P1 = upper_profile_fn(
            [U = in.Ucum, V = in.Vcum, vm = in.v_meas, pc](double t) {
              return ext_mul(ext_pow(ext_div(U(t), V(t)), pc), vm(t));
            },
            sctx);
        double B1 = integral_term(
            [&](double t) {
              return ext_mul(ext_mul(ext_pow(Wlow(t), r / p), ext_pow(P1(t), r / pc)), wval(t));
            },
            sctx);
        rep.terms.emplace_back("B1", ext_pow(B1, 1.0 / r));
      } else {
        RunningSup RS([U = in.Ucum, V = in.Vcum, p](double t) { return ext_div(ext_pow(U(t), p), V(t)); },
                      sctx, false);
        double C1 = integral_term(
            [&](double t) {
              return ext_mul(ext_mul(ext_pow(RS(t), r / p), ext_pow(Wlow(t), r / p)), wval(t));
            },
            sctx);
        rep.terms.emplace_back("C1", ext_pow(C1, 1.0 / r));
      }
      break;
    }
    case 4: {
      RealFn P0 = upper_profile_fn(
          [U = in.Ucum, w = in.w, q](double t) { return ext_mul(ext_pow(U(t), q), w.evaluate(t)); },
          sctx);
      auto D0 = sup_term(
          [&](double t) {
            double inner = P0(t) + ext_mul(ext_pow(in.Ucum(t), q), Wlow(t));
            return ext_mul(ext_pow(in.Vcum(t), -1.0 / p), ext_pow(inner, 1.0 / q));
          },
          sctx);
      record_sup(rep, "D0", D0);
      break;
    }
    case 5: {
      RunningSup RS([U = in.Ucum, w = in.w](double t) { return ext_mul(U(t), w.evaluate(t)); }, sctx,
                    false);
      auto E0 = sup_term(
          [&](double t) {
            double inner = std::max(RS(t), ext_mul(in.Ucum(t), in.w.essential_sup(0.0, t)));
            return ext_mul(ext_pow(in.Vcum(t), -1.0 / p), inner);
          },
          sctx);
      record_sup(rep, "E0", E0);
      break;
    }
    case 6: {
      double pc = p / (p - 1.0);
      RealFn R = anchored_profile_fn(
          [u = in.u_den, V = in.Vcum](double y) { return ext_mul(u(y), ext_div(1.0, V(y))); }, sctx);
      auto inner = [&](double t) {
        double Rt = R(t);
        RealFn g = [&, Rt](double tau) {
          double Rtau = R(tau);
          double d = std::isinf(Rtau) ? kInf : std::max(0.0, Rtau - Rt);
          return ext_mul(ext_pow(d, pc), in.v_meas(tau));
        };
        double body = t < sctx.grid.b ? integrate_adaptive_log(g, t, sctx.grid.b, ctx.quad_tol) : 0.0;
        if (std::isinf(body)) return kInf;
        return body + integrate_to_inf(g, std::max(t, sctx.grid.b), ctx.quad_tol);
      };
      auto F0 = sup_term([&](double t) { return ext_mul(wval(t), ext_pow(inner(t), 1.0 / pc)); }, sctx,
                         /*stride=*/16);
      record_sup(rep, "F0", F0);
      break;
    }
    case 7:
    case 8: {
      if (!in.v_raw) throw unsupported("p = inf is not supported for this characterization");
      auto RSv = std::make_shared<RunningSup>(in.v_raw, sctx, false);
      RealFn inner = upper_profile_fn(
          [u = in.u_den, RSv](double y) { return ext_div(u(y), (*RSv)(y)); }, sctx);
      if (rep.regime.index == 7) {
        double G0 = integral_term(
            [&](double t) { return ext_mul(ext_pow(inner(t), q), wval(t)); }, sctx);
        rep.terms.emplace_back("G0", ext_pow(G0, 1.0 / q));
      } else {
        auto H0 = sup_term([&](double t) { return ext_mul(inner(t), wval(t)); }, sctx);
        record_sup(rep, "H0", H0);
      }
      break;
    }
    default:
      throw invalid_argument("unreachable regime");
  }
  finish_total(rep);
  return rep;
}

}  // namespace detail

// -- norm-ratio correction terms ----------------------------------------------

enum class RatioKind { HardyOne, CopsonOne, NestedOne, NestedOneDual };

// HardyOne:  ||H_u(1)||_{q,w} / ||1||_{p,v}
// CopsonOne: ||H*_u(1)||_{q,w} / ||1||_{p,v}
// NestedOne: || t -> ||1||_{p, g, (0,t)} ||_{q,w} / ||1||_{s, psi-like}
//            with g = Psi[v;s]^{2p} u (s > 1) or V*^{2p} u (s = 1);
// NestedOneDual mirrors with Phi[v;s]^{2p} u on (t, inf) and phi-like.
inline double ratio_term(RatioKind kind, const WeightSpec& u, const WeightSpec& v,
                         const WeightSpec& w, double p, double q, double s, const ScanContext& ctx) {
  if (kind == RatioKind::HardyOne || kind == RatioKind::CopsonOne) {
    RealFn Ufun = kind == RatioKind::HardyOne
                      ? RealFn([u](double x) { return u.integrate_lower(x); })
                      : RealFn([u](double x) { return u.integrate_upper(x); });
    double num = lebesgue_norm(Ufun, q, w, Interval{}, ctx);
    double den;
    if (std::isinf(p)) den = v.essential_sup(0.0, kInf);
    else den = ext_pow(v.total_mass(), 1.0 / p);
    return ext_div(num, den);
  }
  // nested kinds
  RealFn inner_cum;
  double den;
  if (s > 1.0) {
    // ||1||_{s, psi-like} = ((s'+1) Psi(0))^{1/s} in closed form
    double sp = conjugate_exponent(s);
    if (kind == RatioKind::NestedOne) {
      auto pr = psi_pair(v, s, ctx.grid);
      RealFn density = [u, P = pr.second.value, tp = 2.0 * p](double x) {
        return ext_mul(u.evaluate(x), ext_pow(P(x), tp));
      };
      inner_cum = detail::lower_profile_fn(density, ctx);
    } else {
      auto pr = phi_pair(v, s, ctx.grid);
      RealFn density = [u, P = pr.second.value, tp = 2.0 * p](double x) {
        return ext_mul(u.evaluate(x), ext_pow(P(x), tp));
      };
      inner_cum = detail::upper_profile_fn(density, ctx);
    }
    auto vp = v.pow_transform(1.0 - sp);
    den = ext_pow(ext_mul(sp + 1.0, ext_pow(vp->total_mass(), 1.0 / (sp + 1.0))), 1.0 / s);
  } else {
    if (kind == RatioKind::NestedOne) {
      RealFn density = [u, v, tp = 2.0 * p](double x) {
        return ext_mul(u.evaluate(x), ext_pow(v.integrate_upper(x), tp));
      };
      inner_cum = detail::lower_profile_fn(density, ctx);
    } else {
      RealFn density = [u, v, tp = 2.0 * p](double x) {
        return ext_mul(u.evaluate(x), ext_pow(v.integrate_lower(x), tp));
      };
      inner_cum = detail::upper_profile_fn(density, ctx);
    }
    den = v.total_mass();
  }
  RealFn inner_norm = [inner_cum, p](double t) { return ext_pow(inner_cum(t), 1.0 / p); };
  double num = lebesgue_norm(inner_norm, q, w, Interval{}, ctx);
  return ext_div(num, den);
}

// -- public characterizations -------------------------------------------------

// ||H_u f||_{q,w} <= c ||f||_{p,v} on nonincreasing f.
inline ConstantReport hardy_decreasing_constant(const WeightSpec& u, const WeightSpec& v,
                                                const WeightSpec& w, double p, double q,
                                                const ScanContext& ctx = ScanContext::defaults()) {
  detail::CharInput in;
  in.Ucum = [u](double t) { return u.integrate_lower(t); };
  in.Vcum = [v](double t) { return v.integrate_lower(t); };
  in.v_meas = [v](double x) { return v.evaluate(x); };
  in.u_den = [u](double x) { return u.evaluate(x); };
  in.w = w;
  in.p = p;
  in.q = q;
  in.v_raw = [v](double x) { return v.evaluate(x); };
  ScanContext sctx = ctx;
  for (double b : u.breakpoints()) sctx.extra_points.push_back(b);
  for (double b : v.breakpoints()) sctx.extra_points.push_back(b);
  return detail::characterize_dec(in, sctx);
}

// ||H*_u f||_{q,w} <= c ||f||_{p,v} on nondecreasing f.
inline ConstantReport hardy_dual_increasing_constant(const WeightSpec& u, const WeightSpec& v,
                                                     const WeightSpec& w, double p, double q,
                                                     const ScanContext& ctx = ScanContext::defaults()) {
  detail::CharInput in;
  in.Ucum = [u](double t) { return u.integrate_upper(t); };
  in.Vcum = [v](double t) { return v.integrate_upper(t); };
  in.v_meas = [v](double x) { return v.evaluate(x); };
  in.u_den = [u](double x) { return u.evaluate(x); };
  in.w = w;
  in.p = p;
  in.q = q;
  in.v_raw = [v](double x) { return v.evaluate(x); };
  ScanContext sctx = ctx;
  for (double b : u.breakpoints()) sctx.extra_points.push_back(b);
  for (double b : v.breakpoints()) sctx.extra_points.push_back(b);
  return detail::characterize_star(in, sctx);
}

// ||H_u f||_{q,w} <= c ||f||_{p,v} on nondecreasing f; requires V* finite.
inline ConstantReport hardy_increasing_constant(const WeightSpec& u, const WeightSpec& v,
                                                const WeightSpec& w, double p, double q,
                                                const ScanContext& ctx = ScanContext::defaults()) {
  if (std::isinf(p)) throw unsupported("p = inf is not characterized for the nondecreasing cone");
  if (std::isinf(v.integrate_upper(ctx.grid.a)))
    throw condition_failed("V*(x) must be finite for all x > 0");
  WeightFn V1s = v1_star(v, ctx.grid);
  WeightFn U1s = u1(u, v, p, U1Direction::LowerStar, ctx.grid, ctx.quad_tol);
  detail::CharInput in;
  in.Ucum = U1s.value;
  in.Vcum = V1s.value;
  in.v_meas = [v, b = V1s.value](double x) {
    double vs = v.integrate_upper(x);
    return ext_mul(ext_pow(ext_mul(b(x), vs), -2.0), v.evaluate(x));
  };
  in.u_den = [u, b = V1s.value, e = 4.0 / p](double x) {
    return ext_mul(u.evaluate(x), ext_pow(b(x), e));
  };
  in.w = w;
  in.p = p;
  in.q = q;
  ScanContext sctx = ctx;
  for (double b : u.breakpoints()) sctx.extra_points.push_back(b);
  for (double b : v.breakpoints()) sctx.extra_points.push_back(b);
  ConstantReport rep = detail::characterize_dec(in, sctx);
  double ratio = ratio_term(RatioKind::HardyOne, u, v, w, p, q, 1.0, sctx);
  rep.terms.emplace_back("norm_ratio", ratio);
  if (rep.exactness == Exactness::Equal) rep.flags.push_back("equal_sign_combines_ratio");
  detail::finish_total(rep);
  return rep;
}

// ||H*_u f||_{q,w} <= c ||f||_{p,v} on nonincreasing f; requires V finite.
inline ConstantReport copson_decreasing_constant(const WeightSpec& u, const WeightSpec& v,
                                                 const WeightSpec& w, double p, double q,
                                                 const ScanContext& ctx = ScanContext::defaults()) {
  if (std::isinf(p)) throw unsupported("p = inf is not characterized for the nonincreasing-cone Copson inequality");
  if (std::isinf(v.integrate_lower(ctx.grid.b)))
    throw condition_failed("V(x) must be finite for all x > 0");
  WeightFn V1f = v1(v, ctx.grid);
  WeightFn U1f = u1(u, v, p, U1Direction::Upper, ctx.grid, ctx.quad_tol);
  detail::CharInput in;
  in.Ucum = U1f.value;
  in.Vcum = V1f.value;
  in.v_meas = [v, b = V1f.value](double x) {
    double vl = v.integrate_lower(x);
    return ext_mul(ext_pow(ext_mul(b(x), vl), -2.0), v.evaluate(x));
  };
  in.u_den = [u, b = V1f.value, e = 4.0 / p](double x) {
    return ext_mul(u.evaluate(x), ext_pow(b(x), e));
  };
  in.w = w;
  in.p = p;
  in.q = q;
  ScanContext sctx = ctx;
  for (double b : u.breakpoints()) sctx.extra_points.push_back(b);
  for (double b : v.breakpoints()) sctx.extra_points.push_back(b);
  ConstantReport rep = detail::characterize_star(in, sctx);
  double ratio = ratio_term(RatioKind::CopsonOne, u, v, w, p, q, 1.0, sctx);
  rep.terms.emplace_back("norm_ratio", ratio);
  if (rep.exactness == Exactness::Equal) rep.flags.push_back("equal_sign_combines_ratio");
  detail::finish_total(rep);
  return rep;
}

namespace detail {

// Rescale every recorded term by x -> x^(1/p) (the iterated constants are the
// monotone-cone constants of the reduced inequality raised to 1/p).
inline void rescale_terms(ConstantReport& rep, double inv_p) {
  for (auto& [k, v] : rep.terms) v = ext_pow(v, inv_p);
  finish_total(rep);
}

// Displayed form of the q = inf, p < s case of the iterated theorems:
//   sup_t w(t) ( int_0^t ( int_tau^t u / Vc )^{s/(s-p)} vm )^{(s-p)/(sp)}
// (lower orientation; the upper orientation mirrors it).
inline SupOutcome iterated_six_term(const WeightSpec& u, const RealFn& Vc, const RealFn& vm,
                                    const WeightSpec& w, double p, double s, bool lower,
                                    const ScanContext& ctx) {
  double e = s / (s - p);
  RealFn R = anchored_profile_fn(
      [u, Vc](double y) { return ext_mul(u.evaluate(y), ext_div(1.0, Vc(y))); }, ctx);
  ScanContext sctx = ctx;
  for (double b : w.breakpoints()) sctx.extra_points.push_back(b);
  auto term = [&](double t) {
    double Rt = R(t);
    double inner;
    if (lower) {
      RealFn g = [&, Rt](double tau) {
        double d = std::isinf(Rt) ? kInf : std::max(0.0, Rt - R(tau));
        return ext_mul(ext_pow(d, e), vm(tau));
      };
      double head = integrate_to_zero(g, std::min(t, sctx.grid.a), ctx.quad_tol);
      inner = std::isinf(head)
                  ? kInf
                  : head + (t > sctx.grid.a ? integrate_adaptive_log(g, sctx.grid.a, t, ctx.quad_tol)
                                            : 0.0);
    } else {
      RealFn g = [&, Rt](double tau) {
        double Rtau = R(tau);
        double d = std::isinf(Rtau) ? kInf : std::max(0.0, Rtau - Rt);
        return ext_mul(ext_pow(d, e), vm(tau));
      };
      double body = t < sctx.grid.b ? integrate_adaptive_log(g, t, sctx.grid.b, ctx.quad_tol) : 0.0;
      inner = std::isinf(body) ? kInf : body + integrate_to_inf(g, std::max(t, sctx.grid.b), ctx.quad_tol);
    }
    return ext_mul(w.evaluate(t), ext_pow(inner, (s - p) / (s * p)));
  };
  return sup_term(term, sctx, /*stride=*/16);
}

}  // namespace detail

enum class IteratedVariant { C1, C2, C3, C4 };
enum class IteratedS1Variant { C1s1, C2s1, C3s1, C4s1 };

// Best constants of the four iterated Hardy-type inequalities, 1 < s < inf.
inline ConstantReport iterated_constant(IteratedVariant variant, const WeightSpec& u,
                                        const WeightSpec& v, const WeightSpec& w, double p, double q,
                                        double s,
                                        const ScanContext& ctx = ScanContext::defaults()) {
  if (!(p > 0.0) || std::isinf(p)) throw invalid_argument("iterated constants require 0 < p < inf");
  if (!(s > 1.0) || std::isinf(s)) throw invalid_argument("iterated constants require 1 < s < inf");
  ScanContext sctx = ctx;
  for (double b : u.breakpoints()) sctx.extra_points.push_back(b);
  for (double b : v.breakpoints()) sctx.extra_points.push_back(b);
  Regime rg = classify(p, q, s);
  detail::CharInput in;
  in.w = w;
  in.p = s / p;
  in.q = std::isinf(q) ? kInf : q / p;
  double ratio = -1.0;  // < 0: no ratio term
  bool lower_orientation = true;

  switch (variant) {
    case IteratedVariant::C1: {
      auto [phi, Phi] = phi_pair(v, s, sctx.grid);
      WeightFn Phi1 = composite_kernel(u, Phi, 2.0 * p, KernelDirection::FromZero, sctx.grid, sctx.quad_tol);
      in.Ucum = Phi1.value;
      in.Vcum = Phi.value;
      in.v_meas = phi.value;
      in.u_den = [u, P = Phi.value, e = 2.0 * p](double x) {
        return ext_mul(u.evaluate(x), ext_pow(P(x), e));
      };
      break;
    }
    case IteratedVariant::C2: {
      auto psi_pr = psi_pair(v, s, sctx.grid);
      auto [iphi, iPhi] = inner_transform_weights(v, s, InnerSide::ForC2, sctx.grid);
      RealFn base = [a = psi_pr.second.value, b = iPhi.value](double x) { return ext_mul(a(x), b(x)); };
      WeightFn baseFn{base, nullptr, nullptr, "Psi*Phi-hat"};
      WeightFn Phi2 = composite_kernel(u, baseFn, 2.0 * p, KernelDirection::FromZero, sctx.grid, sctx.quad_tol);
      in.Ucum = Phi2.value;
      in.Vcum = iPhi.value;
      in.v_meas = iphi.value;
      in.u_den = [u, base, e = 2.0 * p](double x) { return ext_mul(u.evaluate(x), ext_pow(base(x), e)); };
      ratio = ratio_term(RatioKind::NestedOne, u, v, w, p, q, s, sctx);
      break;
    }
    case IteratedVariant::C3: {
      auto [psi, Psi] = psi_pair(v, s, sctx.grid);
      WeightFn Psi1 = composite_kernel(u, Psi, 2.0 * p, KernelDirection::FromInfinity, sctx.grid, sctx.quad_tol);
      in.Ucum = Psi1.value;
      in.Vcum = Psi.value;
      in.v_meas = psi.value;
      in.u_den = [u, P = Psi.value, e = 2.0 * p](double x) {
        return ext_mul(u.evaluate(x), ext_pow(P(x), e));
      };
      lower_orientation = false;
      break;
    }
    case IteratedVariant::C4: {
      auto phi_pr = phi_pair(v, s, sctx.grid);
      auto [ipsi, iPsi] = inner_transform_weights(v, s, InnerSide::ForC4, sctx.grid);
      RealFn base = [a = phi_pr.second.value, b = iPsi.value](double x) { return ext_mul(a(x), b(x)); };
      WeightFn baseFn{base, nullptr, nullptr, "Phi*Psi-hat"};
      WeightFn Psi2 = composite_kernel(u, baseFn, 2.0 * p, KernelDirection::FromInfinity, sctx.grid, sctx.quad_tol);
      in.Ucum = Psi2.value;
      in.Vcum = iPsi.value;
      in.v_meas = ipsi.value;
      in.u_den = [u, base, e = 2.0 * p](double x) { return ext_mul(u.evaluate(x), ext_pow(base(x), e)); };
      ratio = ratio_term(RatioKind::NestedOneDual, u, v, w, p, q, s, sctx);
      lower_orientation = false;
      break;
    }
  }

  ConstantReport rep;
  if (rg.index == 6) {
    // q = inf, p < s: the displayed F-term (raw u against the denominator
    // cumulative), not the mechanical reduction image
    rep.regime = rg;
    rep.grid = GridInfo{sctx.grid.a, sctx.grid.b, static_cast<int>(sctx.grid.size())};
    rep.exactness = Exactness::Equal;
    auto F = detail::iterated_six_term(u, in.Vcum, in.v_meas, w, p, s, lower_orientation, sctx);
    detail::record_sup(rep, "F0", F);
    detail::finish_total(rep);
  } else {
    rep = lower_orientation ? detail::characterize_dec(in, sctx) : detail::characterize_star(in, sctx);
    detail::rescale_terms(rep, 1.0 / p);
    rep.regime = rg;
    rep.exactness = rg.index <= 3 ? Exactness::Equivalent : Exactness::Equal;
  }
  if (ratio >= 0.0 || std::isinf(ratio)) {
    rep.terms.emplace_back("norm_ratio", ratio);
    if (rep.exactness == Exactness::Equal) rep.flags.push_back("equal_sign_combines_ratio");
    detail::finish_total(rep);
  }
  return rep;
}

// s = 1 variants (right-hand norms ||h||_{1, V^-1} / ||h||_{1, V*^-1}).
inline ConstantReport iterated_constant_s1(IteratedS1Variant variant, const WeightSpec& u,
                                           const WeightSpec& v, const WeightSpec& w, double p,
                                           double q,
                                           const ScanContext& ctx = ScanContext::defaults()) {
  if (!(p > 0.0) || std::isinf(p)) throw invalid_argument("iterated constants require 0 < p < inf");
  ScanContext sctx = ctx;
  for (double b : u.breakpoints()) sctx.extra_points.push_back(b);
  for (double b : v.breakpoints()) sctx.extra_points.push_back(b);
  Regime rg = classify(p, q, 1.0);
  detail::CharInput in;
  in.w = w;
  in.p = 1.0 / p;
  in.q = std::isinf(q) ? kInf : q / p;
  double ratio = -1.0;
  bool lower_orientation = true;

  switch (variant) {
    case IteratedS1Variant::C1s1: {
      if (std::isinf(v.integrate_lower(sctx.grid.b)))
        throw condition_failed("V(x) must be finite for all x > 0");
      WeightFn Vfn{[v](double x) { return v.integrate_lower(x); }, nullptr, nullptr, "V"};
      WeightFn V2 = composite_kernel(u, Vfn, 2.0 * p, KernelDirection::FromZero, sctx.grid, sctx.quad_tol);
      in.Ucum = V2.value;
      in.Vcum = Vfn.value;
      in.v_meas = [v](double x) { return v.evaluate(x); };
      in.u_den = [u, v, e = 2.0 * p](double x) {
        return ext_mul(u.evaluate(x), ext_pow(v.integrate_lower(x), e));
      };
      break;
    }
    case IteratedS1Variant::C2s1: {
      if (std::isinf(v.integrate_upper(sctx.grid.a)))
        throw condition_failed("V*(x) must be finite for all x > 0");
      WeightFn V1s = v1_star(v, sctx.grid);
      RealFn base = [v, b = V1s.value](double x) {
        return ext_mul(v.integrate_upper(x), ext_pow(b(x), 2.0));
      };
      WeightFn baseFn{base, nullptr, nullptr, "V* V1*^2"};
      WeightFn V3s = composite_kernel(u, baseFn, 2.0 * p, KernelDirection::FromZero, sctx.grid, sctx.quad_tol);
      in.Ucum = V3s.value;
      in.Vcum = V1s.value;
      in.v_meas = [v, b = V1s.value](double x) {
        return ext_mul(ext_pow(ext_mul(v.integrate_upper(x), b(x)), -2.0), v.evaluate(x));
      };
      in.u_den = [u, base, e = 2.0 * p](double x) { return ext_mul(u.evaluate(x), ext_pow(base(x), e)); };
      ratio = ratio_term(RatioKind::NestedOne, u, v, w, p, q, 1.0, sctx);
      break;
    }
    case IteratedS1Variant::C3s1: {
      if (std::isinf(v.integrate_upper(sctx.grid.a)))
        throw condition_failed("V*(x) must be finite for all x > 0");
      WeightFn Vsfn{[v](double x) { return v.integrate_upper(x); }, nullptr, nullptr, "V*"};
      WeightFn V2s = composite_kernel(u, Vsfn, 2.0 * p, KernelDirection::FromInfinity, sctx.grid, sctx.quad_tol);
      in.Ucum = V2s.value;
      in.Vcum = Vsfn.value;
      in.v_meas = [v](double x) { return v.evaluate(x); };
      in.u_den = [u, v, e = 2.0 * p](double x) {
        return ext_mul(u.evaluate(x), ext_pow(v.integrate_upper(x), e));
      };
      lower_orientation = false;
      break;
    }
    case IteratedS1Variant::C4s1: {
      if (std::isinf(v.integrate_lower(sctx.grid.b)))
        throw condition_failed("V(x) must be finite for all x > 0");
      WeightFn V1f = v1(v, sctx.grid);
      RealFn base = [v, b = V1f.value](double x) {
        return ext_mul(v.integrate_lower(x), ext_pow(b(x), 2.0));
      };
      WeightFn baseFn{base, nullptr, nullptr, "V V1^2"};
      WeightFn V3 = composite_kernel(u, baseFn, 2.0 * p, KernelDirection::FromInfinity, sctx.grid, sctx.quad_tol);
      in.Ucum = V3.value;
      in.Vcum = V1f.value;
      in.v_meas = [v, b = V1f.value](double x) {
        return ext_mul(ext_pow(ext_mul(v.integrate_lower(x), b(x)), -2.0), v.evaluate(x));
      };
      in.u_den = [u, base, e = 2.0 * p](double x) { return ext_mul(u.evaluate(x), ext_pow(base(x), e)); };
      ratio = ratio_term(RatioKind::NestedOneDual, u, v, w, p, q, 1.0, sctx);
      lower_orientation = false;
      break;
    }
  }

  ConstantReport rep =
      lower_orientation ? detail::characterize_dec(in, sctx) : detail::characterize_star(in, sctx);
  detail::rescale_terms(rep, 1.0 / p);
  rep.regime = rg;
  rep.exactness = rg.index <= 3 ? Exactness::Equivalent : Exactness::Equal;
  if (ratio >= 0.0 || std::isinf(ratio)) {
    rep.terms.emplace_back("norm_ratio", ratio);
    if (rep.exactness == Exactness::Equal) rep.flags.push_back("equal_sign_combines_ratio");
    detail::finish_total(rep);
  }
  return rep;
}

}  // namespace hardycone
