// Timing comparison of the data-parallel scan kernels against their serial
// reference paths. The outputs are also checked for bit-identity, since the
// reductions are index-ordered by construction.
#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "berger/scan.hpp"

namespace {

template <class F>
double time_ms(F&& fn, int repeats = 3) {
  double best = 1e300;
  for (int r = 0; r < repeats; ++r) {
    auto t0 = std::chrono::steady_clock::now();
    fn();
    auto t1 = std::chrono::steady_clock::now();
    best = std::min(best, std::chrono::duration<double, std::milli>(t1 - t0).count());
  }
  return best;
}

bool bit_equal(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return false;
  return true;
}

}  // namespace

int main() {
  int threads = 1;
#ifdef _OPENMP
  threads = omp_get_max_threads();
#endif
  std::printf("scan kernel benchmark (%d threads)\n", threads);
  std::printf("%-28s %12s %12s %9s %8s\n", "kernel", "serial ms", "parallel ms", "speedup",
              "match");

  {
    std::vector<double> serial, parallel;
    double ts = time_ms([&] { serial = berger::scan::calibration_scan(20000, 7, false); });
    double tp = time_ms([&] { parallel = berger::scan::calibration_scan(20000, 7, true); });
    std::printf("%-28s %12.2f %12.2f %8.2fx %8s\n", "random-plane calibration", ts, tp, ts / tp,
                bit_equal(serial, parallel) ? "exact" : "DIFFER");
  }
  {
    std::vector<double> serial, parallel;
    double ts = time_ms([&] { serial = berger::scan::dodeca_grid_scan(192, 384, false); });
    double tp = time_ms([&] { parallel = berger::scan::dodeca_grid_scan(192, 384, true); });
    std::printf("%-28s %12.2f %12.2f %8.2fx %8s\n", "surface-pair grid defects", ts, tp, ts / tp,
                bit_equal(serial, parallel) ? "exact" : "DIFFER");
  }
  {
    std::vector<double> serial, parallel;
    double ts = time_ms([&] { serial = berger::scan::family_scan("Q5", 20000, false); });
    double tp = time_ms([&] { parallel = berger::scan::family_scan("Q5", 20000, true); });
    std::printf("%-28s %12.2f %12.2f %8.2fx %8s\n", "family calibration sweep", ts, tp, ts / tp,
                bit_equal(serial, parallel) ? "exact" : "DIFFER");
  }
  return 0;
}
