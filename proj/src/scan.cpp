#include "berger/scan.hpp"

#include <cmath>
#include <stdexcept>

#include "berger/berger_space.hpp"
#include "berger/rep.hpp"

namespace berger::scan {

std::vector<double> calibration_scan(std::size_t n, unsigned seed, bool parallel) {
  return map_indexed<double>(n, parallel,
                             [seed](std::size_t i) { return random_plane_value(i, seed); });
}

std::vector<double> dodeca_row_defects(int row, int grid_theta, int grid_phi) {
  using linalg::Mat;
  using linalg::Vec;
  static const Mat<double> h = [] {
    Mat<scalar::FieldScalar> he = space::ico_case_frame();
    Mat<double> hf(5, 5);
    for (int i = 0; i < 5; ++i)
      for (int j = 0; j < 5; ++j) hf(i, j) = he(i, j).to_double();
    return hf;
  }();
  std::vector<double> out(grid_phi);
  double theta = M_PI * (row + 0.5) / grid_theta;
  for (int b = 0; b < grid_phi; ++b) {
    double phi = 2 * M_PI * b / grid_phi;
    Vec<double> u{std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi),
                  std::cos(theta)};
    out[b] = 1.0 - rep::upsilon(Vec<double>(h * rep::veronese(u)));
  }
  return out;
}

std::vector<double> dodeca_grid_scan(int grid_theta, int grid_phi, bool parallel) {
  auto rows = map_indexed<std::vector<double>>(grid_theta, parallel, [&](std::size_t r) {
    return dodeca_row_defects(static_cast<int>(r), grid_theta, grid_phi);
  });
  std::vector<double> flat;
  flat.reserve(static_cast<std::size_t>(grid_theta) * grid_phi);
  for (const auto& r : rows) flat.insert(flat.end(), r.begin(), r.end());
  return flat;
}

std::vector<double> family_scan(const std::string& family, std::size_t n, bool parallel) {
  auto value_at = [&family](double t) {
    if (family == "Q5") return g2::plane_q5(t).calibration_value();
    if (family == "Q4a") return g2::plane_q4a(t).calibration_value();
    if (family == "P") return g2::plane_p_theta(t).calibration_value();
    if (family == "Q3")
      return g2::plane_q3(t, {std::cos(2 * t), std::sin(2 * t), 0.0}).calibration_value();
    throw std::invalid_argument("family_scan: unknown family " + family);
  };
  return map_indexed<double>(n, parallel, [&](std::size_t i) {
    double t = M_PI * (i + 0.5) / static_cast<double>(n);
    return value_at(t);
  });
}

}  // namespace berger::scan
