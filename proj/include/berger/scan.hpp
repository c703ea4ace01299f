#pragma once

#include <cstddef>
#include <random>
#include <vector>

#include "berger/g2.hpp"

namespace berger::scan {

// Data-parallel map over an index range. Each slot is written exactly once,
// so the parallel and serial paths produce bit-identical output; reductions
// happen afterwards in index order.
template <class T, class F>
std::vector<T> map_indexed(std::size_t n, bool parallel, F&& fn) {
  std::vector<T> out(n);
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (parallel)
#endif
  for (long long i = 0; i < static_cast<long long>(n); ++i)
    out[static_cast<std::size_t>(i)] = fn(static_cast<std::size_t>(i));
  return out;
}

template <class T, class F>
std::vector<T> map_indexed_serial(std::size_t n, F&& fn) {
  return map_indexed<T>(n, false, std::forward<F>(fn));
}

// ---- the scan kernels shared by the command-line driver, the comparison
// tests and the benchmark ----------------------------------------------------

// calibration value of a pseudorandom 3-plane; index-seeded for determinism
inline double random_plane_value(std::size_t index, unsigned seed) {
  std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ULL + index + 1);
  return g2::random_plane(rng).calibration_value();
}

std::vector<double> calibration_scan(std::size_t n, unsigned seed, bool parallel);

// membership defect of the surface-pair intersection over a latitude row
std::vector<double> dodeca_row_defects(int row, int grid_theta, int grid_phi);
std::vector<double> dodeca_grid_scan(int grid_theta, int grid_phi, bool parallel);

// calibration values along the one-angle families
std::vector<double> family_scan(const std::string& family, std::size_t n, bool parallel);

}  // namespace berger::scan
