#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "berger/scan.hpp"

using namespace berger;

namespace {

bool bit_equal(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return false;
  return true;
}

}  // namespace

TEST_CASE("parallel kernels agree bit for bit with the serial reference") {
  CHECK(bit_equal(scan::calibration_scan(4000, 3, true), scan::calibration_scan(4000, 3, false)));
  CHECK(bit_equal(scan::dodeca_grid_scan(64, 128, true), scan::dodeca_grid_scan(64, 128, false)));
  CHECK(bit_equal(scan::family_scan("Q5", 500, true), scan::family_scan("Q5", 500, false)));
  CHECK(bit_equal(scan::family_scan("P", 500, true), scan::family_scan("P", 500, false)));
}

TEST_CASE("kernels are deterministic in the seed") {
  auto a = scan::calibration_scan(100, 5, true);
  auto b = scan::calibration_scan(100, 5, true);
  auto c = scan::calibration_scan(100, 6, true);
  CHECK(bit_equal(a, b));
  CHECK_FALSE(bit_equal(a, c));
}

TEST_CASE("scan values live in the calibration interval") {
  for (double v : scan::calibration_scan(2000, 11, true)) CHECK(std::fabs(v) <= 1.0 + 1e-12);
  for (double v : scan::family_scan("Q4a", 200, true))
    CHECK(v == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(scan::family_scan("nope", 10, false), std::invalid_argument);
}

TEST_CASE("grid defects are nonnegative with zeros only near the vertex set") {
  auto vals = scan::dodeca_grid_scan(96, 192, true);
  int near_zero = 0;
  for (double v : vals) {
    CHECK(v > -1e-12);
    if (v < 1e-4) ++near_zero;
  }
  CHECK(near_zero > 0);
  CHECK(near_zero < static_cast<int>(vals.size()) / 10);
}
