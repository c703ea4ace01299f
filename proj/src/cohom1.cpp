#include "berger/cohom1.hpp"

#include <cmath>
#include <random>

#include "berger/g2.hpp"
#include "berger/rep.hpp"
#include "berger/stab.hpp"
#include "berger/so5.hpp"

namespace berger::cohom1 {

std::vector<Mat<FieldScalar>> so4_basis() {
  // coefficient matrices of the block-diagonal coframe splitting
  std::vector<Mat<FieldScalar>> basis;
  FieldScalar h(1, 2);
  for (int k = 0; k < 6; ++k) {
    std::array<FieldScalar, 3> mu{}, nu{};
    if (k < 3)
      mu[k] = FieldScalar(1);
    else
      nu[k - 3] = FieldScalar(1);
    Mat<FieldScalar> m(5, 5);
    auto set = [&](int i, int j, FieldScalar v) {
      m(i, j) = v;
      m(j, i) = FieldScalar(0) - v;
    };
    set(1, 2, h * (FieldScalar(0) - mu[0] + nu[0]));
    set(1, 3, h * (FieldScalar(0) - mu[1] + nu[1]));
    set(1, 4, h * (FieldScalar(0) - mu[2] + nu[2]));
    set(2, 3, h * (FieldScalar(0) - mu[2] - nu[2]));
    set(2, 4, h * (mu[1] + nu[1]));
    set(3, 4, h * (FieldScalar(0) - mu[0] - nu[0]));
    basis.push_back(m);
  }
  return basis;
}

namespace {

// exact coordinates of an so(4) matrix in the (m, n) basis
Vec<FieldScalar> so4_coords(const Mat<FieldScalar>& x) {
  static const Mat<FieldScalar> inv = [] {
    auto basis = so4_basis();
    Mat<FieldScalar> A(6, 6);
    int row = 0;
    std::array<std::pair<int, int>, 6> slots{{{1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}}};
    for (const auto& [i, j] : slots) {
      for (int k = 0; k < 6; ++k) A(row, k) = basis[k](i, j);
      ++row;
    }
    return linalg::inverse(A);
  }();
  Vec<FieldScalar> upper(6);
  int row = 0;
  std::array<std::pair<int, int>, 6> slots{{{1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}}};
  for (const auto& [i, j] : slots) upper[row++] = x(i, j);
  return inv * upper;
}

}  // namespace

const liealg::StructureConstants& so4_structure() {
  static const liealg::StructureConstants sc = liealg::StructureConstants::from_basis(
      so4_basis(), [](const Mat<FieldScalar>& m) { return so4_coords(m); });
  return sc;
}

template <class K>
const liealg::CoframeCalculus<K>& so4_calculus() {
  static const liealg::CoframeCalculus<K> calc(so4_structure());
  return calc;
}
template const liealg::CoframeCalculus<FieldScalar>& so4_calculus<FieldScalar>();
template const liealg::CoframeCalculus<double>& so4_calculus<double>();

template <class K>
Mat<K> section_frame(const K& cos_t, const K& sin_t) {
  Mat<K> u = Mat<K>::identity(5);
  u(0, 0) = cos_t;
  u(0, 3) = scalar::Traits<K>::zero() - sin_t;
  u(3, 0) = sin_t;
  u(3, 3) = cos_t;
  return u;
}
template Mat<FieldScalar> section_frame<FieldScalar>(const FieldScalar&, const FieldScalar&);
template Mat<double> section_frame<double>(const double&, const double&);

template <class K>
Mat<K> pullback_matrix(const K& cos_t, const K& sin_t) {
  Mat<K> u = section_frame(cos_t, sin_t);
  Mat<K> ut = u.transpose();
  Mat<K> out(7, 7);
  auto b4 = so4_basis();
  for (int j = 0; j < 6; ++j) {
    Mat<K> Y(5, 5);
    for (int r = 0; r < 5; ++r)
      for (int c = 0; c < 5; ++c) Y(r, c) = scalar::from_field<K>(b4[j](r, c));
    Mat<K> ad = ut * Y * u;
    Vec<K> co = liealg::so5_coords(ad);
    for (int i = 0; i < 7; ++i) out(i, j) = co[3 + i];
  }
  // dt column: the section has unit angular speed, generator in the 1-4 plane
  Mat<K> gen(5, 5);
  gen(3, 0) = scalar::Traits<K>::one();
  gen(0, 3) = scalar::Traits<K>::zero() - scalar::Traits<K>::one();
  Vec<K> co = liealg::so5_coords(gen);
  for (int i = 0; i < 7; ++i) out(i, 6) = co[3 + i];
  return out;
}
template Mat<FieldScalar> pullback_matrix<FieldScalar>(const FieldScalar&, const FieldScalar&);
template Mat<double> pullback_matrix<double>(const double&, const double&);

template <class K>
Mat<K> pullback_expected(const K& cos_t, const K& sin_t) {
  using scalar::from_field;
  K z = scalar::Traits<K>::zero();
  K s2 = from_field<K>(FieldScalar::sqrt2());
  K s3 = from_field<K>(FieldScalar::sqrt3());
  K s5 = from_field<K>(FieldScalar::sqrt5());
  K s10 = from_field<K>(FieldScalar::sqrt10());
  K f320 = from_field<K>(FieldScalar(3, 20));
  K f3240 = from_field<K>(FieldScalar(3, 40)) * s2;
  K f3510 = from_field<K>(FieldScalar(3, 10)) * s5;
  K f3520 = from_field<K>(FieldScalar(3, 20)) * s5;
  K f31040 = from_field<K>(FieldScalar(3, 40)) * s10;
  // the two phase-shifted cosines expand without the auxiliary angle:
  // sqrt7 cos(t - phase) = sqrt3 cos t + 2 sin t,
  // sqrt7 cos(t + phase) = sqrt3 cos t - 2 sin t
  K cm = s3 * cos_t + K(2) * sin_t;
  K cp = s3 * cos_t - K(2) * sin_t;
  Mat<K> e(7, 7);
  e(0, 0) = f320 * (K(2) - cos_t);
  e(0, 3) = z - f320 * (K(2) + cos_t);
  e(1, 1) = f3240 * (s3 - cm);
  e(1, 4) = f3240 * (s3 + cm);
  e(2, 2) = f3240 * (s3 - cp);
  e(2, 5) = z - f3240 * (s3 + cp);
  e(3, 6) = f3510;
  e(4, 0) = z - f3520 * sin_t;
  e(4, 3) = z - f3520 * sin_t;
  e(5, 1) = f31040 * (scalar::Traits<K>::one() + cos_t);
  e(5, 4) = f31040 * (scalar::Traits<K>::one() - cos_t);
  e(6, 2) = z - f31040 * (scalar::Traits<K>::one() + cos_t);
  e(6, 5) = f31040 * (scalar::Traits<K>::one() - cos_t);
  return e;
}
template Mat<FieldScalar> pullback_expected<FieldScalar>(const FieldScalar&, const FieldScalar&);
template Mat<double> pullback_expected<double>(const double&, const double&);

double pullback_residual(double t) {
  double c = std::cos(t), s = std::sin(t);
  return (pullback_matrix<double>(c, s) - pullback_expected<double>(c, s)).max_abs();
}

namespace {

// omega_i (1-based) as a 1-form over the 6-dimensional orbit coframe at fixed t
Form<double> omega_form(const Mat<double>& P, int i) {
  Form<double> f;
  for (int j = 0; j < 6; ++j)
    if (std::fabs(P(i - 1, j)) > 0) f.accumulate(static_cast<liealg::Mono>(1u << j), P(i - 1, j));
  return f;
}

}  // namespace

OrbitStructure orbit_su3(double t) {
  OrbitStructure out;
  Mat<double> P = pullback_matrix<double>(std::cos(t), std::sin(t));
  Mat<double> orbit_part(7, 6);
  for (int i = 0; i < 7; ++i)
    for (int j = 0; j < 6; ++j) orbit_part(i, j) = P(i, j);
  out.coframe_rank = linalg::rank(orbit_part, 1e-10);
  out.principal = out.coframe_rank == 6;

  auto o = [&](int i) { return omega_form(P, i); };
  out.omega2 = -(wedge(o(1), o(5)) + wedge(o(2), o(6)) + wedge(o(3), o(7)));
  out.re_upsilon = wedge(wedge(o(1), o(2)), o(3)) - wedge(wedge(o(1), o(6)), o(7)) +
                   wedge(wedge(o(2), o(5)), o(7)) - wedge(wedge(o(3), o(5)), o(6));
  Form<double> om3 = wedge(out.omega2, wedge(out.omega2, out.omega2));
  out.omega_cubed = om3.coeff(static_cast<liealg::Mono>(0b111111));
  if (!out.principal) return out;
  if (std::fabs(out.omega_cubed) < 1e-12)
    throw std::domain_error("orbit_su3: degenerate structure form on a principal orbit");
  return out;
}

HalfFlatCheck verify_nearly_half_flat(double t) {
  OrbitStructure s = orbit_su3(t);
  if (!s.principal) throw std::domain_error("verify_nearly_half_flat: singular parameter");
  const auto& calc = so4_calculus<double>();
  Form<double> d_re = calc.d(s.re_upsilon);
  Form<double> om2 = wedge(s.omega2, s.omega2);
  // proportionality over the union of monomials
  double num = 0, den = 0;
  for (const auto& [m, c] : om2.terms()) {
    num += d_re.coeff(m) * c;
    den += c * c;
  }
  HalfFlatCheck out;
  out.constant = den > 0 ? num / den : 0;
  double worst = 0;
  Form<double> diff = d_re - out.constant * om2;
  worst = diff.max_abs();
  out.residual = worst;
  out.pass = worst < 1e-10;
  return out;
}

NotNkCheck verify_not_nearly_kahler(double t) {
  OrbitStructure s = orbit_su3(t);
  if (!s.principal) throw std::domain_error("verify_not_nearly_kahler: singular parameter");
  const auto& calc = so4_calculus<double>();
  Form<double> dom = calc.d(s.omega2);
  double num = 0, den = 0;
  for (const auto& [m, c] : s.re_upsilon.terms()) {
    num += dom.coeff(m) * c;
    den += c * c;
  }
  double cstar = den > 0 ? num / den : 0;
  Form<double> diff = dom - cstar * s.re_upsilon;
  NotNkCheck out;
  out.domega_norm = dom.max_abs();
  out.defect = diff.max_abs();
  out.pass = out.defect > 1e-6;
  return out;
}

double phi_restriction_residual(double t) {
  Mat<double> P = pullback_matrix<double>(std::cos(t), std::sin(t));
  auto o = [&](int i) { return omega_form(P, i); };
  // ambient 3-form with every tangent index substituted (the dt column is
  // dropped on the orbit, so the fourth coframe leg vanishes identically)
  Form<double> phi_sub;
  for (const auto& term : g2::phi_terms()) {
    Form<double> w = wedge(wedge(o(term.idx[0]), o(term.idx[1])), o(term.idx[2]));
    phi_sub += (term.sign > 0) ? w : -w;
  }
  OrbitStructure s = orbit_su3(t);
  return (phi_sub - s.re_upsilon).max_abs();
}

SlagCheck slag_implies_assoc(double t, const std::vector<Vec<double>>& plane_basis, double tol) {
  if (plane_basis.size() != 3) throw std::invalid_argument("slag_implies_assoc: need 3 vectors");
  for (const auto& v : plane_basis)
    if (std::fabs(v[3]) > 1e-12)
      throw std::domain_error("slag_implies_assoc: plane not tangent to the orbit");
  (void)t;
  auto ortho = linalg::orthogonalize(plane_basis, 1e-12);
  if (ortho.size() != 3) throw std::domain_error("slag_implies_assoc: degenerate plane");
  double norm2 = 1;
  for (const auto& u : ortho) norm2 *= linalg::dot(u, u);
  double denom = std::sqrt(norm2);
  // orbit 3-form evaluated in ambient coordinates
  auto eval3 = [&](std::array<std::array<int, 3>, 4> idx, std::array<int, 4> signs) {
    double v = 0;
    for (int k = 0; k < 4; ++k) {
      const auto& t3 = idx[k];
      double det =
          ortho[0][t3[0]] * (ortho[1][t3[1]] * ortho[2][t3[2]] - ortho[1][t3[2]] * ortho[2][t3[1]]) -
          ortho[1][t3[0]] * (ortho[0][t3[1]] * ortho[2][t3[2]] - ortho[0][t3[2]] * ortho[2][t3[1]]) +
          ortho[2][t3[0]] * (ortho[0][t3[1]] * ortho[1][t3[2]] - ortho[0][t3[2]] * ortho[1][t3[1]]);
      v += signs[k] * det;
    }
    return v;
  };
  SlagCheck out;
  out.re_upsilon_value =
      eval3({{{0, 1, 2}, {0, 5, 6}, {1, 4, 6}, {2, 4, 5}}}, {1, -1, 1, -1}) / denom;
  out.phi_value = g2::phi_eval(ortho[0], ortho[1], ortho[2]) / denom;
  out.re_calibrated = std::fabs(out.re_upsilon_value - 1.0) < tol;
  out.phi_calibrated = std::fabs(out.phi_value - 1.0) < tol;
  out.implication_holds = !out.re_calibrated || out.phi_calibrated;
  return out;
}

std::vector<Vec<double>> calibrated_orbit_plane(double t, unsigned seed) {
  (void)t;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  // ascend the orbit 3-form over frames inside the orbit tangent space
  Mat<double> U(7, 3);
  for (int j = 0; j < 3; ++j)
    for (int i = 0; i < 7; ++i) U(i, j) = (i == 3) ? 0.0 : gauss(rng);
  U = linalg::qr_q(U);
  auto value = [&](const Mat<double>& F) {
    std::vector<Vec<double>> b{F.col(0), F.col(1), F.col(2)};
    auto det3 = [&](int a, int bb, int c) {
      return b[0][a] * (b[1][bb] * b[2][c] - b[1][c] * b[2][bb]) -
             b[1][a] * (b[0][bb] * b[2][c] - b[0][c] * b[2][bb]) +
             b[2][a] * (b[0][bb] * b[1][c] - b[0][c] * b[1][bb]);
    };
    return det3(0, 1, 2) - det3(0, 5, 6) + det3(1, 4, 6) - det3(2, 4, 5);
  };
  double v = value(U);
  if (v < 0) {  // flip orientation
    for (int i = 0; i < 7; ++i) std::swap(U(i, 1), U(i, 2));
    v = value(U);
  }
  for (int it = 0; it < 500 && std::fabs(v - 1.0) > 1e-12; ++it) {
    Mat<double> G(7, 3);
    const double eps = 1e-6;
    for (int j = 0; j < 3; ++j)
      for (int i = 0; i < 7; ++i) {
        if (i == 3) continue;
        Mat<double> Up = U;
        Up(i, j) += eps;
        Mat<double> Um = U;
        Um(i, j) -= eps;
        G(i, j) = (value(Up) - value(Um)) / (2 * eps);
      }
    Mat<double> Z = G - U * (U.transpose() * G);
    for (int j = 0; j < 3; ++j) Z(3, j) = 0.0;
    double step = 0.2;
    bool improved = false;
    for (int half = 0; half < 40; ++half) {
      Mat<double> trial = U;
      for (int i = 0; i < 7; ++i)
        for (int j = 0; j < 3; ++j) trial(i, j) += step * Z(i, j);
      for (int j = 0; j < 3; ++j) trial(3, j) = 0.0;
      Mat<double> Q = linalg::qr_q(trial);
      double v2 = value(Q);
      if (v2 > v) {
        U = Q;
        v = v2;
        improved = true;
        break;
      }
      step *= 0.5;
    }
    if (!improved) break;
  }
  return {U.col(0), U.col(1), U.col(2)};
}

StabilizerSample orbit_stabilizer(double t) {
  StabilizerSample out;
  Vec<double> v{std::cos(t), 0, 0, -std::sin(t), 0};
  // continuous part: derivations of the rotation algebra annihilating v
  FieldScalar z(0), o(1);
  std::vector<Mat<FieldScalar>> gens{
      Mat<FieldScalar>{{z, z, z}, {z, z, FieldScalar(-1)}, {z, o, z}},
      Mat<FieldScalar>{{z, z, o}, {z, z, z}, {FieldScalar(-1), z, z}},
      Mat<FieldScalar>{{z, FieldScalar(-1), z}, {o, z, z}, {z, z, z}}};
  Mat<double> sys(5, 3);
  for (int k = 0; k < 3; ++k) {
    Mat<FieldScalar> d = rep::rho_derivation(gens[k], 2);
    for (int i = 0; i < 5; ++i) {
      double acc = 0;
      for (int j = 0; j < 5; ++j) acc += d(i, j).to_double() * v[j];
      sys(i, k) = acc;
    }
  }
  out.continuous_dim = 3 - linalg::rank(sys, 1e-9);
  // finite part within the octahedral candidates
  static const auto oct = stab::oct_group();
  int count = 0;
  for (const auto& g : oct.elements()) {
    Mat<FieldScalar> R = rep::rho(g, 2);
    double worst = 0;
    for (int i = 0; i < 5; ++i) {
      double acc = 0;
      for (int j = 0; j < 5; ++j) acc += R(i, j).to_double() * v[j];
      worst = std::max(worst, std::fabs(acc - v[i]));
    }
    if (worst < 1e-9) ++count;
  }
  out.finite_order = count;
  return out;
}

std::vector<double> singular_parameters(int samples) {
  std::vector<double> out;
  auto min_sv = [&](double t) {
    Mat<double> P = pullback_matrix<double>(std::cos(t), std::sin(t));
    Mat<double> block(7, 6);
    for (int i = 0; i < 7; ++i)
      for (int j = 0; j < 6; ++j) block(i, j) = P(i, j);
    // smallest eigenvalue of the 6x6 Gram matrix
    Mat<double> Gm = block.transpose() * block;
    std::vector<double> ev;
    Mat<double> V(6, 6);
    linalg::sym_eigen(Gm, &ev, &V);
    return std::sqrt(std::max(0.0, ev[0]));
  };
  // refine around grid minima of the degeneracy indicator
  for (int k = 0; k <= samples; ++k) {
    double t = M_PI * k / samples;
    if (min_sv(t) < 1e-3) {
      // refine by golden section in the bracket
      double lo = std::max(0.0, t - M_PI / samples), hi = std::min(M_PI, t + M_PI / samples);
      for (int it = 0; it < 60; ++it) {
        double m1 = lo + (hi - lo) / 3, m2 = hi - (hi - lo) / 3;
        if (min_sv(m1) < min_sv(m2))
          hi = m2;
        else
          lo = m1;
      }
      double root = (lo + hi) / 2;
      bool dup = false;
      for (double r : out)
        if (std::fabs(r - root) < 1e-4) dup = true;
      if (!dup && min_sv(root) < 1e-6) out.push_back(root);
    }
  }
  return out;
}

}  // namespace berger::cohom1
