#include <catch2/catch_amalgamated.hpp>

#include "hardycone/transforms.hpp"
#include "test_support.hpp"

using namespace hardycone;
using Catch::Approx;

namespace {
const Grid kGrid = make_log_grid(1e-8, 1e8, 513);
}

TEST_CASE("phi pair closed forms for the unit weight") {
  // v = 1, s = 2: s' = 2, v^{1-s'} = 1, phi = x^{-2/3}, Phi = x^{1/3}
  auto [phi, Phi] = phi_pair(WeightSpec::power(1, 0), 2.0, kGrid);
  for (double x : {0.2, 1.0, 8.0, 120.0}) {
    CHECK(phi(x) == Approx(std::pow(x, -2.0 / 3.0)).epsilon(1e-12));
    CHECK(Phi(x) == Approx(std::pow(x, 1.0 / 3.0)).epsilon(1e-12));
  }
  CHECK(Phi(8.0) == Approx(2.0).epsilon(1e-12));

  // cumulative identity: int_0^x phi = (s'+1) Phi, numerically and exactly
  double x = 5.0;
  double numeric = testoracle::simpson([&](double t) { return t > 0 ? phi(t) : 0.0; }, 1e-10, x);
  CHECK(numeric == Approx(3.0 * Phi(x)).epsilon(1e-6));
  CHECK(phi.lower(x) == Approx(3.0 * Phi(x)).epsilon(1e-12));
}

TEST_CASE("phi pair rejects non-integrable inputs") {
  // v = x^2, s = 2: v^{1-s'} = x^{-2} is not integrable at the origin
  CHECK_THROWS_AS(phi_pair(WeightSpec::power(1, 2), 2.0, kGrid), condition_failed);
  // step tables vanish outside their support, so v^{1-s'} blows up
  CHECK_THROWS_AS(phi_pair(WeightSpec::step({1.0, 2.0}, {1.0}), 2.0, kGrid), condition_failed);
}

TEST_CASE("psi pair closed forms") {
  // v = x^2, s = 2: v^{1-s'} = x^{-2}, J(x) = 1/x, psi = x^{-4/3}, Psi = x^{-1/3}
  auto [psi, Psi] = psi_pair(WeightSpec::power(1, 2), 2.0, kGrid);
  for (double x : {0.5, 1.0, 27.0}) {
    CHECK(psi(x) == Approx(std::pow(x, -4.0 / 3.0)).epsilon(1e-12));
    CHECK(Psi(x) == Approx(std::pow(x, -1.0 / 3.0)).epsilon(1e-12));
  }
  CHECK(Psi(1.0) == Approx(1.0));
  CHECK_THROWS_AS(psi_pair(WeightSpec::power(1, 0), 2.0, kGrid), condition_failed);

  // upper cumulative identity with the (s'+1) factor
  double x = 2.0;
  double numeric = testoracle::simpson([&](double t) { return psi(t); }, x, 1e7) ;
  CHECK(numeric == Approx(3.0 * Psi(x)).epsilon(1e-5));
}

TEST_CASE("reconstruction identity Phi^{-s} phi^{1-s} = v on powers") {
  for (double alpha : {-0.7, 0.0, 0.9}) {
    for (double s : {1.5, 2.0, 3.0}) {
      double sp = s / (s - 1.0);
      if (alpha * (1.0 - sp) <= -1.0) continue;  // outside the admissible range
      auto [phi, Phi] = phi_pair(WeightSpec::power(2.0, alpha), s, kGrid);
      for (double x : {0.3, 1.0, 14.0}) {
        double recon = ext_mul(ext_pow(Phi(x), -s), ext_pow(phi(x), 1.0 - s));
        CHECK(recon == Approx(2.0 * std::pow(x, alpha)).epsilon(1e-9));
      }
    }
  }
}

TEST_CASE("V1 and V1* cube-root cumulatives") {
  // v = 1: V = t, V1(x) = x^{-1/3}
  auto V1 = v1(WeightSpec::power(1, 0), kGrid);
  for (double x : {0.1, 1.0, 1000.0}) CHECK(V1(x) == Approx(std::pow(x, -1.0 / 3.0)).epsilon(1e-12));

  // v = x^{-2}: V*(t) = 1/t, V1*(x) = x^{1/3}
  auto V1s = v1_star(WeightSpec::power(1, -2), kGrid);
  for (double x : {0.1, 1.0, 1000.0}) CHECK(V1s(x) == Approx(std::pow(x, 1.0 / 3.0)).epsilon(1e-12));

  // zero weight: identically zero (0 * inf = 0 in the defining integrand)
  auto Vz = v1(WeightSpec::zero(), kGrid);
  CHECK(Vz(1.0) == 0.0);

  // monotonicity
  double prev = kInf;
  for (double x : {0.01, 0.1, 1.0, 10.0}) {
    CHECK(V1(x) <= prev);
    prev = V1(x);
  }
  prev = 0.0;
  for (double x : {0.01, 0.1, 1.0, 10.0}) {
    CHECK(V1s(x) >= prev);
    prev = V1s(x);
  }

  // preconditions
  CHECK_THROWS_AS(v1(WeightSpec::power(1, -2), kGrid), condition_failed);   // V = inf
  CHECK_THROWS_AS(v1_star(WeightSpec::power(1, 0), kGrid), condition_failed);  // V* = inf

  // cube-root scaling: v -> lambda v multiplies V1 by lambda^{1/3}
  auto V1a = v1(WeightSpec::power(1, 0.5), kGrid);
  auto V1b = v1(WeightSpec::power(7.0, 0.5), kGrid);
  for (double x : {0.3, 4.0}) CHECK(V1b(x) == Approx(std::pow(7.0, 1.0 / 3.0) * V1a(x)).epsilon(1e-12));
}

TEST_CASE("U1 lifted cumulatives") {
  auto grid = make_log_grid(1e-8, 1e8, 1025);
  // u = 1, v = x^{-2}, p = 2: V1* = t^{1/3}, U1*(x) = int_0^x t^{2/3} = (3/5) x^{5/3}
  auto U1s = u1(WeightSpec::power(1, 0), WeightSpec::power(1, -2), 2.0, U1Direction::LowerStar, grid);
  for (double x : {0.01, 1.0, 30.0}) CHECK(U1s(x) == Approx(0.6 * std::pow(x, 5.0 / 3.0)).epsilon(1e-6));

  // zero integrand
  auto U1z = u1(WeightSpec::zero(), WeightSpec::power(1, -2), 2.0, U1Direction::LowerStar, grid);
  CHECK(U1z(1.0) == 0.0);

  // divergent tail yields +inf, not an error: u = 1, v = 1, p = 2
  auto U1d = u1(WeightSpec::power(1, 0), WeightSpec::power(1, 0), 2.0, U1Direction::Upper, grid);
  CHECK(std::isinf(U1d(1.0)));
}

TEST_CASE("composite kernels") {
  auto grid = make_log_grid(1e-8, 1e8, 1025);
  // Phi1 with u = 1, v = 1, s = 2, p = 1: Phi = x^{1/3}, int_0^tau x^{2/3} = (3/5) tau^{5/3}
  auto [phi, Phi] = phi_pair(WeightSpec::power(1, 0), 2.0, grid);
  auto Phi1 = composite_kernel(WeightSpec::power(1, 0), Phi, 2.0, KernelDirection::FromZero, grid);
  for (double tau : {0.1, 1.0, 100.0}) CHECK(Phi1(tau) == Approx(0.6 * std::pow(tau, 5.0 / 3.0)).epsilon(1e-6));

  // V2 with u = v = 1, p = 1: int_0^tau x^2 = tau^3/3
  WeightFn Vfn{[](double x) { return x; }, nullptr, nullptr, "V"};
  auto V2 = composite_kernel(WeightSpec::power(1, 0), Vfn, 2.0, KernelDirection::FromZero, grid);
  for (double tau : {0.5, 2.0}) CHECK(V2(tau) == Approx(tau * tau * tau / 3.0).epsilon(1e-8));

  auto Kz = composite_kernel(WeightSpec::zero(), Phi, 2.0, KernelDirection::FromZero, grid);
  CHECK(Kz(1.0) == 0.0);

  // linearity in u: kernel(2u) = 2 kernel(u)
  auto Phi1x2 = composite_kernel(WeightSpec::power(2, 0), Phi, 2.0, KernelDirection::FromZero, grid);
  for (double tau : {0.2, 5.0}) CHECK(Phi1x2(tau) == Approx(2.0 * Phi1(tau)).epsilon(1e-10));
}

TEST_CASE("nested inner transforms, closed form") {
  // ForC2 with v = x^2, s = 2: Phi-form(x) = 3^{1/3} x^{1/9}
  auto [iphi, iPhi] = inner_transform_weights(WeightSpec::power(1, 2), 2.0, InnerSide::ForC2, kGrid);
  for (double x : {0.5, 1.0, 9.0})
    CHECK(iPhi(x) == Approx(std::pow(3.0, 1.0 / 3.0) * std::pow(x, 1.0 / 9.0)).epsilon(1e-10));
  CHECK(iPhi(1.0) == Approx(1.4422495703).epsilon(1e-6));

  // quadrature cross-check of the collapsed inner integral: the phi-form
  // density integrates back to the Phi-form cumulative
  double x = 2.0;
  double num = testoracle::simpson([&](double t) { return t > 0 ? std::pow(t, -2.0 / 3.0) : 0.0; },
                                   1e-12, x);
  CHECK(num == Approx(3.0 * std::pow(x, 1.0 / 3.0)).epsilon(1e-6));

  CHECK_THROWS_AS(inner_transform_weights(WeightSpec::power(1, 0), 2.0, InnerSide::ForC2, kGrid),
                  condition_failed);

  // the ForC4 mirror under x -> 1/x symmetry: for v = x^{-4}... use v = 1
  // instead: v^{1-s'} = 1, I(x) = x, inner integrand x^{-4/3},
  // M(x) = 3 x^{-1/3}, Psi-form = 3^{1/3} x^{-1/9}
  auto [ipsi, iPsi] = inner_transform_weights(WeightSpec::power(1, 0), 2.0, InnerSide::ForC4, kGrid);
  for (double x : {0.5, 4.0})
    CHECK(iPsi(x) == Approx(std::pow(3.0, 1.0 / 3.0) * std::pow(x, -1.0 / 9.0)).epsilon(1e-10));
}

TEST_CASE("abstract composition vs displayed closed form within a factor window") {
  // Phi[Psi^s psi^{1-s}; s] computed literally from psi/Psi against the
  // displayed collapsed form: equivalent up to a bounded factor
  double s = 2.0;
  auto v = WeightSpec::power(1, 2);
  auto [psi, Psi] = psi_pair(v, s, kGrid);
  auto [iphi, iPhi] = inner_transform_weights(v, s, InnerSide::ForC2, kGrid);
  double sp = 2.0;  // s' for s = 2
  for (double x : {0.1, 1.0, 10.0}) {
    // literal inner weight Psi^s psi^{1-s}; its phi-transform needs the
    // cumulative of (Psi^s psi^{1-s})^{1-s'}
    auto inner_weight = [&](double t) { return ext_mul(ext_pow(Psi(t), s), ext_pow(psi(t), 1.0 - s)); };
    double cum = testoracle::simpson(
        [&](double t) { return t > 0 ? ext_pow(inner_weight(t), 1.0 - sp) : 0.0; }, 1e-9, x);
    double literal = std::pow(cum, 1.0 / (sp + 1.0));
    double ratio = literal / iPhi(x);
    CHECK(ratio > 1.0 / 8.0);
    CHECK(ratio < 8.0);
  }
}
