#include <catch2/catch_amalgamated.hpp>

#include "hardycone/profile.hpp"
#include "hardycone/quadrature.hpp"
#include "test_support.hpp"

using namespace hardycone;
using Catch::Approx;

TEST_CASE("panel integration matches closed forms") {
  auto f = [](double x) { return 3.0 * x * x; };
  CHECK(gauss_panel_log(f, 0.5, 2.0, 16) == Approx(8.0 - 0.125).epsilon(1e-12));
  CHECK(integrate_adaptive_log(f, 1e-3, 10.0) == Approx(1000.0 - 1e-9).epsilon(1e-10));

  auto g = [](double x) { return std::exp(-x); };
  double ref = testoracle::simpson(g, 0.01, 20.0);
  CHECK(integrate_adaptive_log(g, 0.01, 20.0) == Approx(ref).epsilon(1e-9));
}

TEST_CASE("head and tail integrals with power asymptotes") {
  // integrable head
  CHECK(integrate_to_zero([](double x) { return std::pow(x, -0.5); }, 1.0) == Approx(2.0).epsilon(1e-9));
  // divergent head
  CHECK(std::isinf(integrate_to_zero([](double x) { return 1.0 / x; }, 1.0)));
  CHECK(std::isinf(integrate_to_zero([](double x) { return std::pow(x, -1.5); }, 1.0)));
  // integrable tail
  CHECK(integrate_to_inf([](double x) { return std::pow(x, -2.0); }, 1.0) == Approx(1.0).epsilon(1e-9));
  CHECK(std::isinf(integrate_to_inf([](double x) { return 1.0 / x; }, 1.0)));
  // compactly supported integrand: zero beyond the support edge
  auto bump = [](double x) { return x >= 1e-4 && x < 1e-2 ? 2.0 : 0.0; };
  CHECK(integrate_to_zero(bump, 0.5) == Approx(2.0 * (1e-2 - 1e-4)).epsilon(1e-9));
  CHECK(integrate_to_inf(bump, 1e-5) == Approx(2.0 * (1e-2 - 1e-4)).epsilon(1e-9));
  // non-pure-power but asymptotically power
  auto mix = [](double x) { return 1.0 / (x * x + x * x * x); };  // ~x^-2 at inf, ~x^-2 head
  double ref = testoracle::simpson(mix, 1.0, 5e4) + 1.0 / 5e4;  // tail of x^-2 dominates
  CHECK(integrate_to_inf(mix, 1.0) == Approx(ref).epsilon(1e-5));
}

TEST_CASE("sup probes") {
  CHECK(std::isinf(sup_toward_zero([](double x) { return 1.0 / x; }, 1.0)));
  CHECK(sup_toward_zero([](double) { return 3.0; }, 1.0) == Approx(3.0));
  CHECK(sup_toward_inf([](double x) { return 1.0 / x; }, 1.0) <= 1.0);
  CHECK(std::isinf(sup_toward_inf([](double x) { return x; }, 1.0)));
}

TEST_CASE("tabulated cumulative profile against closed forms") {
  auto grid = make_log_grid(1e-4, 1e4, 257);
  // density x^(-1/2): lower cumulative 2 sqrt(t)
  CumulativeProfile lo([](double x) { return std::pow(x, -0.5); }, Direction::Lower, grid, 1e-10);
  CHECK_FALSE(lo.diverged());
  for (double t : {2e-4, 1e-3, 0.37, 1.0, 55.0, 2e3}) {
    CHECK(lo(t) == Approx(2.0 * std::sqrt(t)).epsilon(1e-7));
  }
  // below and beyond the grid via the probed asymptote
  CHECK(lo(1e-6) == Approx(2e-3).epsilon(1e-6));
  CHECK(lo(1e6) == Approx(2e3).epsilon(1e-6));

  CumulativeProfile up([](double x) { return std::pow(x, -2.0); }, Direction::Upper, grid, 1e-10);
  for (double t : {1e-3, 1.0, 1e3}) CHECK(up(t) == Approx(1.0 / t).epsilon(1e-7));

  CumulativeProfile dv([](double x) { return 1.0 / x; }, Direction::Lower, grid, 1e-10);
  CHECK(dv.diverged());
  CHECK(std::isinf(dv(1.0)));
}

TEST_CASE("profile off-node interpolation stays monotone") {
  auto grid = make_log_grid(1e-3, 1e3, 129);
  CumulativeProfile lo([](double x) { return 1.0 / (1.0 + x); }, Direction::Lower, grid, 1e-10);
  double prev = 0.0;
  for (int i = 0; i <= 500; ++i) {
    double t = 1e-3 * std::pow(1e6, i / 500.0);
    double v = lo(t);
    CHECK(v >= prev - 1e-12);
    prev = v;
  }
  // spot-check against log(1+t)
  for (double t : {0.02, 1.0, 31.0}) CHECK(lo(t) == Approx(std::log1p(t)).epsilon(1e-6));
}

TEST_CASE("anchored profile supports divergent origins") {
  auto grid = make_log_grid(1e-3, 1e3, 129);
  auto prof = CumulativeProfile::anchored_lower([](double x) { return 1.0 / x; }, grid, 1e-10);
  // differences reproduce log(t2/t1) even though int_0 diverges
  CHECK(prof(10.0) - prof(0.1) == Approx(std::log(100.0)).epsilon(1e-8));
  CHECK(prof(grid.a) == 0.0);
  CHECK(prof(1e-4) == Approx(-std::log(10.0)).epsilon(1e-6));
}
