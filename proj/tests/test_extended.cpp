#include <catch2/catch_amalgamated.hpp>

#include "hardycone/extended.hpp"

using namespace hardycone;

TEST_CASE("degenerate products and quotients") {
  ExtendedValue zero(0.0), inf(kInf), two(2.0);

  CHECK((zero * inf).value() == 0.0);
  CHECK((inf * zero).value() == 0.0);
  CHECK((inf / inf).value() == 0.0);
  CHECK((zero / zero).value() == 0.0);

  CHECK((two * inf).is_inf());
  CHECK((two / zero).is_inf());
  CHECK((two / inf).value() == 0.0);
  CHECK((zero / two).value() == 0.0);
  CHECK((inf / two).is_inf());
  CHECK((two * two).value() == 4.0);
  CHECK((inf + two).is_inf());
}

TEST_CASE("extended powers") {
  CHECK(ext_pow(0.0, 2.0) == 0.0);
  CHECK(std::isinf(ext_pow(0.0, -1.0)));
  CHECK(ext_pow(kInf, -0.5) == 0.0);
  CHECK(std::isinf(ext_pow(kInf, 3.0)));
  CHECK(ext_pow(0.0, 0.0) == 1.0);
  CHECK(ext_pow(kInf, 0.0) == 1.0);
  CHECK(ext_pow(4.0, 0.5) == 2.0);
}

TEST_CASE("no NaN leaks from degenerate chains") {
  double r = ext_div(ext_mul(0.0, kInf), ext_mul(kInf, 0.0));
  CHECK(r == 0.0);
  CHECK(!std::isnan(ext_div(kInf, kInf)));
  CHECK(!std::isnan(ext_mul(ext_pow(ext_div(0.0, 0.0), -2.0), 0.0)));
  CHECK(ext_mul(ext_pow(ext_div(0.0, 0.0), -2.0), 0.0) == 0.0);
}
