#include <doctest.h>

#include "hslab/selftest.hpp"

using namespace hslab;

TEST_CASE("calibration passes on the shipped conventions") {
  auto r = run_calibration();
  CHECK(r.ok());
  CHECK(r.first_failure() == nullptr);
  CHECK(r.checks.size() == 7);
}

TEST_CASE("calibration names the first broken identity") {
  auto dc = run_calibration({true, false});
  REQUIRE(dc.first_failure());
  CHECK(dc.first_failure()->name == "dd^c ω_0");

  auto star = run_calibration({false, true});
  REQUIRE(star.first_failure());
  CHECK(star.first_failure()->name == "*d^c ω_0");
  CHECK_FALSE(star.checks.back().ok);
}
