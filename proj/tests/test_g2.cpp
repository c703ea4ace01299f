#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "berger/g2.hpp"

using namespace berger;
using g2::ThreePlane;
using linalg::Mat;
using linalg::Vec;
using scalar::FieldScalar;

namespace {

Mat<double> random_rotation_f(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Mat<double> A{{g(rng), g(rng), g(rng)}, {g(rng), g(rng), g(rng)}, {g(rng), g(rng), g(rng)}};
  Mat<double> Q = linalg::qr_q(A);
  double det = Q(0, 0) * (Q(1, 1) * Q(2, 2) - Q(1, 2) * Q(2, 1)) -
               Q(0, 1) * (Q(1, 0) * Q(2, 2) - Q(1, 2) * Q(2, 0)) +
               Q(0, 2) * (Q(1, 0) * Q(2, 1) - Q(1, 1) * Q(2, 0));
  if (det < 0)
    for (int i = 0; i < 3; ++i) Q(i, 2) = -Q(i, 2);
  return Q;
}

}  // namespace

TEST_CASE("nearly parallel identity, exact and float") {
  auto exact = g2::verify_nearly_parallel<FieldScalar>();
  CHECK(exact.pass);
  CHECK(exact.dphi_residual == 0.0);
  CHECK(exact.hodge_residual == 0.0);
  CHECK(exact.dstar_norm == 0.0);  // measured: the dual 4-form is closed

  auto fl = g2::verify_nearly_parallel<double>(1e-12);
  CHECK(fl.pass);
  CHECK(fl.dphi_residual < 1e-12);
}

TEST_CASE("catalogued plane values") {
  CHECK(g2::plane_a123<FieldScalar>().calibrated_exact() == 1);
  CHECK(g2::plane_a145<FieldScalar>().calibrated_exact() == 1);
  CHECK(g2::plane_a167<FieldScalar>().calibrated_exact() == 1);
  CHECK(g2::plane_a_ico<FieldScalar>().calibrated_exact() == 1);
  CHECK(g2::plane_a_oct<FieldScalar>().calibrated_exact() == 1);
  auto w = g2::plane_w<FieldScalar>();
  CHECK(w.calibrated_exact() == 0);
  CHECK(w.phi_value_unnormalized().is_zero());  // the complement plane is fully isotropic
  auto val = g2::plane_a_ico<FieldScalar>().calibration_value_exact();
  REQUIRE(val.has_value());
  CHECK(*val == FieldScalar(1));

  // span(e4,e5,e6) annihilates the 3-form
  ThreePlane<FieldScalar> p(g2::h3_unit<FieldScalar>(4), g2::h3_unit<FieldScalar>(5),
                            g2::h3_unit<FieldScalar>(6));
  CHECK(p.phi_value_unnormalized().is_zero());
}

TEST_CASE("families calibrate identically") {
  for (int k = 0; k < 50; ++k) {
    double t = 0.02 + k * (M_PI - 0.04) / 49;
    CHECK(g2::plane_q5(t).calibration_value() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(g2::plane_q4a(t).calibration_value() == doctest::Approx(1.0).epsilon(1e-12));
    std::array<double, 3> good{std::cos(2 * t), std::sin(2 * t), 0.0};
    CHECK(g2::plane_q3(t, good).calibration_value() == doctest::Approx(1.0).epsilon(1e-12));
  }
  // endpoints of the families agree with the isolated planes
  CHECK(g2::plane_q5(0.0).same_subspace(g2::plane_a145<double>()));
  CHECK(g2::plane_q5(M_PI / 2).same_subspace(g2::plane_a167<double>()));
  CHECK(g2::plane_q4a(0.0).same_subspace(g2::plane_a123<double>()));
}

TEST_CASE("first interpolation family has value cos(3 theta)") {
  for (int k = 0; k < 40; ++k) {
    double t = -M_PI + k * 2 * M_PI / 40;
    CHECK(g2::plane_p_theta(t).calibration_value() ==
          doctest::Approx(std::cos(3 * t)).epsilon(1e-11));
  }
  // exact confirmation at the three roots: cos/sin representable in the field
  FieldScalar c0(1), s0(0);
  CHECK(g2::plane_p_theta<FieldScalar>(c0, s0).calibrated_exact() == 1);
  FieldScalar c1(-1, 2), s1 = FieldScalar::sqrt3() * FieldScalar(1, 2);
  CHECK(g2::plane_p_theta<FieldScalar>(c1, s1).calibrated_exact() == 1);
  FieldScalar s2 = FieldScalar(0) - FieldScalar::sqrt3() * FieldScalar(1, 2);
  CHECK(g2::plane_p_theta<FieldScalar>(c1, s2).calibrated_exact() == 1);
  // the plane at theta = 0 is the octahedral one
  CHECK(g2::plane_p_theta(0.0).same_subspace(g2::plane_a_oct<double>()));
}

TEST_CASE("second four-fold family is never calibrated") {
  for (int i = 0; i < 20; ++i)
    for (int j = 0; j < 20; ++j) {
      double psi = i * M_PI / 20, t = j * M_PI / 20;
      double v = g2::plane_q4b(psi, t).calibration_value();
      CHECK(std::fabs(v) < 1 - 1e-6);
    }
}

TEST_CASE("mis-phased cubic axes are not calibrated") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> unif(0.15, M_PI - 0.15);
  for (int k = 0; k < 25; ++k) {
    double t = unif(rng);
    std::array<double, 3> bad{std::cos(2 * t + 0.4), std::sin(2 * t + 0.4), 0.0};
    CHECK(g2::plane_q3(t, bad).calibration_value() < 1 - 1e-4);
  }
}

TEST_CASE("calibration bound and invariances") {
  std::mt19937_64 rng(404);
  for (int t = 0; t < 10000; ++t) {
    auto p = g2::random_plane(rng);
    CHECK(std::fabs(p.calibration_value()) <= 1.0 + 1e-12);
  }
  for (int t = 0; t < 100; ++t) {
    auto p = g2::random_plane(rng);
    double v = p.calibration_value();
    // invariance under the 7-dimensional action
    Mat<double> R = rep::rho(random_rotation_f(rng), 3);
    ThreePlane<double> q(R * p.basis()[0], R * p.basis()[1], R * p.basis()[2]);
    CHECK(q.calibration_value() == doctest::Approx(v).epsilon(1e-11));
    // orientation flip negates
    CHECK(p.orientation_flipped().calibration_value() == doctest::Approx(-v).epsilon(1e-12));
    // basis independence: re-span by an SO(3) change of the same oriented basis
    Mat<double> m = p.basis_matrix();
    Mat<double> rot3 = rep::rho(random_rotation_f(rng), 1);
    Mat<double> m2 = m * rot3;
    ThreePlane<double> r(m2.col(0), m2.col(1), m2.col(2));
    CHECK(r.calibration_value() == doctest::Approx(v).epsilon(1e-11));
  }
}

TEST_CASE("cone membership") {
  Vec<double> e1(7, 0.0);
  e1[0] = 1.0;
  auto r1 = g2::cone_membership(e1);
  CHECK(r1.member);
  CHECK(r1.residual < 1e-10);
  // witness reproduces the element
  Vec<double> back = rep::cone_element<double>(r1.witness[0], r1.witness[1], r1.witness[2]);
  for (int i = 0; i < 7; ++i) CHECK(back[i] == doctest::Approx(e1[i]).epsilon(1e-8));

  auto r0 = g2::cone_membership(Vec<double>(7, 0.0));
  CHECK(r0.member);

  Vec<double> e2(7, 0.0);
  e2[1] = 1.0;
  auto r2 = g2::cone_membership(e2);
  CHECK_FALSE(r2.member);
  CHECK(r2.residual > 1e-3);

  // invariance of the cone under the 7-dimensional action
  std::mt19937_64 rng(6);
  for (int t = 0; t < 10; ++t) {
    Mat<double> R = rep::rho(random_rotation_f(rng), 3);
    CHECK(g2::cone_membership(R * e1).member);
    CHECK_FALSE(g2::cone_membership(R * e2).member);
  }
}

TEST_CASE("gradient ascent reaches calibrated planes") {
  std::mt19937_64 rng(11);
  // perturb the first coordinate plane by a small rotation in the 4,5 directions
  auto base = g2::plane_a123<double>();
  Mat<double> U = base.basis_matrix();
  U(3, 0) += 0.10;
  U(4, 1) -= 0.07;
  U(5, 2) += 0.05;
  ThreePlane<double> start = ThreePlane<double>::from_columns(linalg::qr_q(U));
  auto res = g2::nearest_associative(start);
  CHECK(res.converged);
  CHECK(res.value == doctest::Approx(1.0).epsilon(1e-9));

  // an already calibrated start stays put
  auto oct = g2::nearest_associative(g2::plane_a_oct<double>());
  CHECK(oct.iterations == 0);
  CHECK(oct.value == doctest::Approx(1.0));

  // value 0 start is rejected
  ThreePlane<double> zero(g2::h3_unit<double>(4), g2::h3_unit<double>(5), g2::h3_unit<double>(6));
  CHECK_THROWS_AS(g2::nearest_associative(zero), std::domain_error);
}
