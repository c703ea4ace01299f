#include "berger/g2.hpp"

#include <cmath>

namespace berger::g2 {

namespace {

// residual of v against the cone element with direction u and optimal scale
double radial_residual(const Vec<double>& v, const std::array<double, 3>& u,
                       std::array<double, 3>* scaled, Vec<double>* best) {
  Vec<double> cu = rep::cone_element<double>(u[0], u[1], u[2]);
  double cc = linalg::dot(cu, cu);
  double r3 = cc > 1e-300 ? linalg::dot(v, cu) / cc : 0.0;
  double r = std::cbrt(r3);
  for (int i = 0; i < 3; ++i) (*scaled)[i] = r * u[i];
  best->assign(7, 0.0);
  double res2 = 0;
  for (int i = 0; i < 7; ++i) {
    (*best)[i] = r3 * cu[i];
    double d = v[i] - (*best)[i];
    res2 += d * d;
  }
  return std::sqrt(res2);
}

}  // namespace

ConeResult cone_membership(const Vec<double>& v, int grid_points, double threshold) {
  ConeResult out;
  double vnorm = std::sqrt(linalg::dot(v, v));
  if (vnorm < threshold) {
    out.member = true;
    out.witness = {0, 0, 0};
    out.residual = vnorm;
    return out;
  }
  // Fibonacci sphere seeding
  double best_res = 1e300;
  std::array<double, 3> best_a{};
  const double golden = M_PI * (3.0 - std::sqrt(5.0));
  for (int k = 0; k < grid_points; ++k) {
    double z = 1.0 - 2.0 * (k + 0.5) / grid_points;
    double rad = std::sqrt(std::max(0.0, 1.0 - z * z));
    double th = golden * k;
    std::array<double, 3> u{rad * std::cos(th), rad * std::sin(th), z};
    std::array<double, 3> scaled;
    Vec<double> model;
    double res = radial_residual(v, u, &scaled, &model);
    if (res < best_res) {
      best_res = res;
      best_a = scaled;
    }
  }
  // Gauss-Newton on a -> |v - cone(a)|^2
  std::array<double, 3> a = best_a;
  for (int it = 0; it < 20; ++it) {
    Vec<double> f = rep::cone_element<double>(a[0], a[1], a[2]);
    Vec<double> r(7);
    for (int i = 0; i < 7; ++i) r[i] = f[i] - v[i];
    Mat<double> J(7, 3);
    const double eps = 1e-7;
    for (int j = 0; j < 3; ++j) {
      std::array<double, 3> ap = a;
      ap[j] += eps;
      Vec<double> fp = rep::cone_element<double>(ap[0], ap[1], ap[2]);
      for (int i = 0; i < 7; ++i) J(i, j) = (fp[i] - f[i]) / eps;
    }
    Mat<double> Jt = J.transpose();
    Mat<double> JtJ = Jt * J;
    for (int d = 0; d < 3; ++d) JtJ(d, d) += 1e-12;
    Vec<double> g = Jt * r;
    Vec<double> step;
    try {
      step = linalg::solve(JtJ, g, 1e-14);
    } catch (const std::exception&) {
      break;
    }
    for (int j = 0; j < 3; ++j) a[j] -= step[j];
  }
  Vec<double> f = rep::cone_element<double>(a[0], a[1], a[2]);
  double res2 = 0;
  for (int i = 0; i < 7; ++i) res2 += (f[i] - v[i]) * (f[i] - v[i]);
  out.residual = std::sqrt(res2);
  out.witness = a;
  out.member = out.residual < threshold;
  return out;
}

namespace {

double frame_value(const Mat<double>& U) {
  return phi_eval<double>(U.col(0), U.col(1), U.col(2));
}

}  // namespace

AscentResult nearest_associative(const ThreePlane<double>& start, AscentOptions opts) {
  if (start.calibration_value() <= 0)
    throw std::domain_error("nearest_associative: starting value must be positive");
  // orthonormal frame from the stored orthogonal basis
  Mat<double> U(7, 3);
  for (int j = 0; j < 3; ++j) {
    Vec<double> b = start.basis()[j];
    double n = std::sqrt(linalg::dot(b, b));
    for (int i = 0; i < 7; ++i) U(i, j) = b[i] / n;
  }
  double value = frame_value(U);
  int it = 0;
  for (; it < opts.max_iterations; ++it) {
    if (std::fabs(value - 1.0) < opts.tolerance) break;
    // Euclidean gradient: d/dU_j phi(u1,u2,u3) = phi(., u_k, u_l) contractions
    Mat<double> G(7, 3);
    for (int j = 0; j < 3; ++j) {
      Vec<double> a = U.col((j + 1) % 3), b = U.col((j + 2) % 3);
      // grad_j[i] = phi(e_i, a, b) with the cyclic orientation preserved
      for (int i = 0; i < 7; ++i) {
        Vec<double> e(7, 0.0);
        e[i] = 1.0;
        G(i, j) = phi_eval<double>(e, a, b);
      }
    }
    // project to the Grassmannian horizontal space: Z = G - U (U^T G)
    Mat<double> UtG = U.transpose() * G;
    Mat<double> Z = G - U * UtG;
    double znorm = Z.max_abs();
    if (znorm < 1e-14) break;
    double step = opts.step;
    bool improved = false;
    for (int half = 0; half < 30; ++half) {
      Mat<double> trial = U;
      for (int i = 0; i < 7; ++i)
        for (int j = 0; j < 3; ++j) trial(i, j) += step * Z(i, j);
      Mat<double> Q = linalg::qr_q(trial);
      double v2 = frame_value(Q);
      if (v2 > value) {
        U = Q;
        value = v2;
        improved = true;
        break;
      }
      step *= 0.5;
    }
    if (!improved) break;
  }
  AscentResult r{ThreePlane<double>::from_columns(U), value, it,
                 std::fabs(value - 1.0) < opts.tolerance};
  if (!r.converged && it >= opts.max_iterations)
    throw std::runtime_error("nearest_associative: no convergence");
  return r;
}

ThreePlane<double> random_plane(std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  Mat<double> A(7, 3);
  for (int i = 0; i < 7; ++i)
    for (int j = 0; j < 3; ++j) A(i, j) = gauss(rng);
  Mat<double> Q = linalg::qr_q(A);
  return ThreePlane<double>::from_columns(Q);
}

}  // namespace berger::g2
