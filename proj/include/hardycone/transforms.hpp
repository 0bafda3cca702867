// Auxiliary reduction weights built from base weights: the (phi, Phi) and
// (psi, Psi) pairs, the cube-root cumulatives V1 / V1*, the lifted cumulative
// weights U1 / U1*, generic composite kernels, and the nested inner
// transforms used by the iterated characterizations.  Closed forms are used
// wherever the chain rule gives one; everything else is tabulated on the
// shared log grid.
#pragma once

#include <string>
#include <utility>

#include "hardycone/errors.hpp"
#include "hardycone/profile.hpp"
#include "hardycone/weights.hpp"

namespace hardycone {

// A nonnegative function on (0, inf) with optional cumulative evaluators.
struct WeightFn {
  RealFn value;  // pointwise, extended-real
  RealFn lower;  // t -> int_0^t value   (null when not derived)
  RealFn upper;  // t -> int_t^inf value (null when not derived)
  std::string provenance;

  double operator()(double x) const { return value(x); }
};

inline WeightFn weight_fn(const WeightSpec& w, std::string provenance = "base weight") {
  return WeightFn{[w](double x) { return w.evaluate(x); },
                  [w](double t) { return w.integrate_lower(t); },
                  [w](double t) { return w.integrate_upper(t); }, std::move(provenance)};
}

inline double conjugate_exponent(double s) {
  if (std::isinf(s)) return 1.0;
  if (s == 1.0) return kInf;
  return s / (s - 1.0);
}

// phi[v;s](x) = (int_0^x v^{1-s'})^{-s'/(s'+1)} v^{1-s'}(x),
// Phi[v;s](x) = (int_0^x v^{1-s'})^{1/(s'+1)}.
// The cumulative of phi is (s'+1) * Phi (chain rule).
inline std::pair<WeightFn, WeightFn> phi_pair(const WeightSpec& v, double s, const Grid& grid) {
  if (!(s > 1.0) || std::isinf(s)) throw invalid_argument("phi_pair requires 1 < s < inf");
  double sp = conjugate_exponent(s);
  auto vp = v.pow_transform(1.0 - sp);
  if (!vp || std::isinf(vp->integrate_lower(grid.b)) || std::isinf(vp->integrate_lower(grid.a)))
    throw condition_failed("v^(1-s') must be integrable near the origin for the phi transform");
  WeightSpec vps = *vp;
  double total = vps.total_mass();
  double kappa = 1.0 / (sp + 1.0);
  auto Phi_val = [vps, kappa](double x) { return ext_pow(vps.integrate_lower(x), kappa); };
  WeightFn phi;
  phi.value = [vps, sp](double x) {
    return ext_mul(ext_pow(vps.integrate_lower(x), -sp / (sp + 1.0)), vps.evaluate(x));
  };
  phi.lower = [Phi_val, sp](double t) { return (sp + 1.0) * Phi_val(t); };
  double Phi_inf = ext_pow(total, kappa);
  phi.upper = [Phi_val, sp, Phi_inf](double t) {
    double d = Phi_inf - Phi_val(t);
    return std::isinf(Phi_inf) ? kInf : (sp + 1.0) * std::max(0.0, d);
  };
  phi.provenance = "phi[v;s]";
  WeightFn Phi{Phi_val, nullptr, nullptr, "Phi[v;s]"};
  return {std::move(phi), std::move(Phi)};
}

// psi[v;s], Psi[v;s]: the mirror pair built from the upper cumulative.
inline std::pair<WeightFn, WeightFn> psi_pair(const WeightSpec& v, double s, const Grid& grid) {
  if (!(s > 1.0) || std::isinf(s)) throw invalid_argument("psi_pair requires 1 < s < inf");
  double sp = conjugate_exponent(s);
  auto vp = v.pow_transform(1.0 - sp);
  if (!vp || std::isinf(vp->integrate_upper(grid.a)) || std::isinf(vp->integrate_upper(grid.b)))
    throw condition_failed("v^(1-s') must be integrable near infinity for the psi transform");
  WeightSpec vps = *vp;
  double total = vps.total_mass();
  double kappa = 1.0 / (sp + 1.0);
  auto Psi_val = [vps, kappa](double x) { return ext_pow(vps.integrate_upper(x), kappa); };
  WeightFn psi;
  psi.value = [vps, sp](double x) {
    return ext_mul(ext_pow(vps.integrate_upper(x), -sp / (sp + 1.0)), vps.evaluate(x));
  };
  psi.upper = [Psi_val, sp](double t) { return (sp + 1.0) * Psi_val(t); };
  double Psi_zero = ext_pow(total, kappa);
  psi.lower = [Psi_val, sp, Psi_zero](double t) {
    double d = Psi_zero - Psi_val(t);
    return std::isinf(Psi_zero) ? kInf : (sp + 1.0) * std::max(0.0, d);
  };
  psi.provenance = "psi[v;s]";
  WeightFn Psi{Psi_val, nullptr, nullptr, "Psi[v;s]"};
  return {std::move(psi), std::move(Psi)};
}

// V1(x) = (int_x^inf V^-2 v)^(1/3) = (1/V(x) - 1/V(inf))^(1/3), nonincreasing.
inline WeightFn v1(const WeightSpec& v, const Grid& grid) {
  if (v.is_zero()) return WeightFn{[](double) { return 0.0; }, nullptr, nullptr, "V1[zero]"};
  if (std::isinf(v.integrate_lower(grid.b)))
    throw condition_failed("V(x) must be finite for all x > 0 to form V1");
  double inv_at_inf = ext_div(1.0, v.total_mass());
  return WeightFn{[v, inv_at_inf](double x) {
                    double d = ext_div(1.0, v.integrate_lower(x)) - inv_at_inf;
                    return ext_pow(std::max(0.0, d), 1.0 / 3.0);
                  },
                  nullptr, nullptr, "V1[v]"};
}

// V1*(x) = (int_0^x V*^-2 v)^(1/3) = (1/V*(x) - 1/V*(0))^(1/3), nondecreasing.
inline WeightFn v1_star(const WeightSpec& v, const Grid& grid) {
  if (v.is_zero()) return WeightFn{[](double) { return 0.0; }, nullptr, nullptr, "V1*[zero]"};
  if (std::isinf(v.integrate_upper(grid.a)))
    throw condition_failed("V*(x) must be finite for all x > 0 to form V1*");
  double inv_at_zero = ext_div(1.0, v.total_mass());
  return WeightFn{[v, inv_at_zero](double x) {
                    double d = ext_div(1.0, v.integrate_upper(x)) - inv_at_zero;
                    return ext_pow(std::max(0.0, d), 1.0 / 3.0);
                  },
                  nullptr, nullptr, "V1*[v]"};
}

enum class U1Direction { Upper, LowerStar };

// U1(x) = int_x^inf u V1^(4/p)   or   U1*(x) = int_0^x u [V1*]^(4/p).
// Divergence yields +inf values, not an error.
inline WeightFn u1(const WeightSpec& u, const WeightSpec& v, double p, U1Direction dir,
                   const Grid& grid, double rel_tol = 1e-8) {
  WeightFn base = dir == U1Direction::Upper ? v1(v, grid) : v1_star(v, grid);
  RealFn density = [u, bv = base.value, e = 4.0 / p](double x) {
    return ext_mul(u.evaluate(x), ext_pow(bv(x), e));
  };
  auto prof = std::make_shared<CumulativeProfile>(
      density, dir == U1Direction::Upper ? Direction::Upper : Direction::Lower, grid, rel_tol);
  return WeightFn{[prof](double x) { return (*prof)(x); }, nullptr, nullptr,
                  dir == U1Direction::Upper ? "U1[u,v;p]" : "U1*[u,v;p]"};
}

enum class KernelDirection { FromZero, FromInfinity };

// tau -> int u * base^exponent from 0 (FromZero) or to inf (FromInfinity).
inline WeightFn composite_kernel(const WeightSpec& u, const WeightFn& base, double exponent,
                                 KernelDirection dir, const Grid& grid, double rel_tol = 1e-8) {
  RealFn density = [u, bv = base.value, exponent](double x) {
    return ext_mul(u.evaluate(x), ext_pow(bv(x), exponent));
  };
  auto prof = std::make_shared<CumulativeProfile>(
      density, dir == KernelDirection::FromZero ? Direction::Lower : Direction::Upper, grid, rel_tol);
  return WeightFn{[prof](double x) { return (*prof)(x); }, nullptr, nullptr,
                  "kernel[u * " + base.provenance + "^e]"};
}

enum class InnerSide { ForC2, ForC4 };

// The nested transforms in closed form.
//   ForC2: Phi-form(x) = { int_0^x (int_t^inf v^{1-s'})^{-2s'/(1+s')} v^{1-s'}(t) dt }^{1/(1+s')}
//   ForC4: Psi-form(x) = { int_x^inf (int_0^t v^{1-s'})^{-2s'/(1+s')} v^{1-s'}(t) dt }^{1/(1+s')}
// together with their phi-/psi-style densities.  The inner integral collapses
// by the chain rule, so both evaluate through exact base cumulatives.
inline std::pair<WeightFn, WeightFn> inner_transform_weights(const WeightSpec& v, double s,
                                                             InnerSide side, const Grid& grid) {
  if (!(s > 1.0) || std::isinf(s)) throw invalid_argument("inner_transform_weights requires 1 < s < inf");
  double sp = conjugate_exponent(s);
  auto vp = v.pow_transform(1.0 - sp);
  double kap = (1.0 - sp) / (1.0 + sp);       // exponent collapsing the inner cumulative
  double scale = (1.0 + sp) / (sp - 1.0);     // = -1/kap
  if (side == InnerSide::ForC2) {
    if (!vp || std::isinf(vp->integrate_upper(grid.a)) || std::isinf(vp->integrate_upper(grid.b)))
      throw condition_failed("v^(1-s') must be integrable near infinity for the nested Phi transform");
    WeightSpec vps = *vp;
    double J0 = ext_pow(vps.total_mass(), kap);
    auto L = [vps, kap, scale, J0](double x) {
      return scale * std::max(0.0, ext_pow(vps.integrate_upper(x), kap) - J0);
    };
    WeightFn inner_phi;
    inner_phi.value = [vps, sp, L](double x) {
      double g = ext_mul(ext_pow(vps.integrate_upper(x), -2.0 * sp / (1.0 + sp)), vps.evaluate(x));
      return ext_mul(ext_pow(L(x), -sp / (1.0 + sp)), g);
    };
    inner_phi.provenance = "phi[Psi[v;s]^s psi[v;s]^(1-s); s]";
    WeightFn inner_Phi{[L, sp](double x) { return ext_pow(L(x), 1.0 / (1.0 + sp)); }, nullptr,
                       nullptr, "Phi[Psi[v;s]^s psi[v;s]^(1-s); s]"};
    return {std::move(inner_phi), std::move(inner_Phi)};
  }
  if (!vp || std::isinf(vp->integrate_lower(grid.b)) || std::isinf(vp->integrate_lower(grid.a)))
    throw condition_failed("v^(1-s') must be integrable near the origin for the nested Psi transform");
  WeightSpec vps = *vp;
  double Iinf = ext_pow(vps.total_mass(), kap);
  auto M = [vps, kap, scale, Iinf](double x) {
    return scale * std::max(0.0, ext_pow(vps.integrate_lower(x), kap) - Iinf);
  };
  WeightFn inner_psi;
  inner_psi.value = [vps, sp, M](double x) {
    double g = ext_mul(ext_pow(vps.integrate_lower(x), -2.0 * sp / (1.0 + sp)), vps.evaluate(x));
    return ext_mul(ext_pow(M(x), -sp / (1.0 + sp)), g);
  };
  inner_psi.provenance = "psi[Phi[v;s]^s phi[v;s]^(1-s); s]";
  WeightFn inner_Psi{[M, sp](double x) { return ext_pow(M(x), 1.0 / (1.0 + sp)); }, nullptr, nullptr,
                     "Psi[Phi[v;s]^s phi[v;s]^(1-s); s]"};
  return {std::move(inner_psi), std::move(inner_Psi)};
}

}  // namespace hardycone
