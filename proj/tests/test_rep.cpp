#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "berger/rep.hpp"

using namespace berger;
using linalg::Mat;
using linalg::Vec;
using scalar::FieldScalar;

namespace {

Mat<double> rot_x(double a) {
  return Mat<double>{{1, 0, 0}, {0, std::cos(a), -std::sin(a)}, {0, std::sin(a), std::cos(a)}};
}

Mat<FieldScalar> random_exact_rotation(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-4, 4);
  std::uniform_int_distribution<int> den(1, 5);
  auto q = [&] { return FieldScalar(num(rng), den(rng)); };
  return rep::cayley_rotation(q(), q(), q());
}

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

double mat_residual(const Mat<double>& a, const Mat<double>& b) { return (a - b).max_abs(); }

}  // namespace

TEST_CASE("rho of x-rotation has the block weights") {
  double a = 0.73;
  Mat<double> R2 = rep::rho(rot_x(a), 2);
  CHECK(R2(0, 0) == doctest::Approx(1.0));
  CHECK(R2(1, 1) == doctest::Approx(std::cos(a)));
  CHECK(R2(2, 1) == doctest::Approx(std::sin(a)));
  CHECK(R2(3, 3) == doctest::Approx(std::cos(2 * a)));
  CHECK(R2(4, 3) == doctest::Approx(std::sin(2 * a)));

  Mat<double> R3 = rep::rho(rot_x(a), 3);
  CHECK(R3(0, 0) == doctest::Approx(1.0));
  CHECK(R3(1, 1) == doctest::Approx(std::cos(a)));
  CHECK(R3(1, 2) == doctest::Approx(std::sin(a)));
  CHECK(R3(3, 3) == doctest::Approx(std::cos(2 * a)));
  CHECK(R3(3, 4) == doctest::Approx(std::sin(2 * a)));
  CHECK(R3(5, 5) == doctest::Approx(std::cos(3 * a)));
  CHECK(R3(5, 6) == doctest::Approx(std::sin(3 * a)));
}

TEST_CASE("rho is an orthogonal homomorphism") {
  std::mt19937_64 rng(31);
  for (int n : {1, 2, 3}) {
    for (int t = 0; t < 100; ++t) {
      Mat<double> g = random_rotation_f(rng), h = random_rotation_f(rng);
      Mat<double> lhs = rep::rho(g, n) * rep::rho(h, n);
      Mat<double> rhs = rep::rho(g * h, n);
      CHECK(mat_residual(lhs, rhs) < 1e-12);
      Mat<double> R = rep::rho(g, n);
      CHECK(mat_residual(R.transpose() * R, Mat<double>::identity(R.rows())) < 1e-12);
    }
  }
  CHECK_THROWS_AS(rep::rho(Mat<double>{{2, 0, 0}, {0, 1, 0}, {0, 0, 1}}, 2), std::domain_error);
}

TEST_CASE("rho exact on rational rotations") {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 10; ++t) {
    Mat<FieldScalar> g = random_exact_rotation(rng), h = random_exact_rotation(rng);
    Mat<FieldScalar> R2 = rep::rho(g, 2);
    CHECK(R2.transpose() * R2 == Mat<FieldScalar>::identity(5));
    CHECK(rep::rho(g, 3) * rep::rho(h, 3) == rep::rho(g * h, 3));
  }
  CHECK(rep::rho(Mat<FieldScalar>::identity(3), 3) == Mat<FieldScalar>::identity(7));
}

TEST_CASE("derivation matches the gamma block conventions") {
  // L1 exact derivative equals the gamma matrix with first coordinate 1
  Mat<FieldScalar> L1{{FieldScalar(0), FieldScalar(0), FieldScalar(0)},
                      {FieldScalar(0), FieldScalar(0), FieldScalar(-1)},
                      {FieldScalar(0), FieldScalar(1), FieldScalar(0)}};
  Mat<FieldScalar> D2 = rep::rho_derivation(L1, 2);
  CHECK(D2 == liealg::gamma_matrix(FieldScalar(1), FieldScalar(0), FieldScalar(0)));
  CHECK(rep::lambda_so3(L1) == D2);

  Mat<FieldScalar> L2{{FieldScalar(0), FieldScalar(0), FieldScalar(1)},
                      {FieldScalar(0), FieldScalar(0), FieldScalar(0)},
                      {FieldScalar(-1), FieldScalar(0), FieldScalar(0)}};
  CHECK(rep::rho_derivation(L2, 2) ==
        liealg::gamma_matrix(FieldScalar(0), FieldScalar(1), FieldScalar(0)));
  Mat<FieldScalar> L3{{FieldScalar(0), FieldScalar(-1), FieldScalar(0)},
                      {FieldScalar(1), FieldScalar(0), FieldScalar(0)},
                      {FieldScalar(0), FieldScalar(0), FieldScalar(0)}};
  CHECK(rep::rho_derivation(L3, 2) ==
        liealg::gamma_matrix(FieldScalar(0), FieldScalar(0), FieldScalar(1)));

  // homomorphism on brackets: lambda([L1,L2]) = [lambda(L1), lambda(L2)]
  Mat<FieldScalar> lhs = rep::lambda_so3(L1 * L2 - L2 * L1);
  Mat<FieldScalar> rhs = rep::lambda_so3(L1) * rep::lambda_so3(L2) -
                         rep::lambda_so3(L2) * rep::lambda_so3(L1);
  CHECK(lhs == rhs);
  CHECK(rep::lambda_so3(FieldScalar(0) * L1) == Mat<FieldScalar>(5, 5));
}

TEST_CASE("invariant polynomials at basis points") {
  Vec<FieldScalar> e1{FieldScalar(1), FieldScalar(0), FieldScalar(0), FieldScalar(0),
                      FieldScalar(0)};
  CHECK(rep::upsilon(e1) == FieldScalar(1));
  CHECK(rep::g2form(e1) == FieldScalar(1));
  Vec<FieldScalar> e4{FieldScalar(0), FieldScalar(0), FieldScalar(0), FieldScalar(1),
                      FieldScalar(0)};
  CHECK(rep::upsilon(e4) == FieldScalar(0));
}

TEST_CASE("invariance of the cubic under the 5-dimensional action") {
  std::mt19937_64 rng(55);
  std::normal_distribution<double> gauss;
  for (int t = 0; t < 100; ++t) {
    Mat<double> g = random_rotation_f(rng);
    Mat<double> R = rep::rho(g, 2);
    Vec<double> v(5);
    for (auto& x : v) x = gauss(rng);
    CHECK(rep::upsilon(R * v) == doctest::Approx(rep::upsilon(v)).epsilon(1e-10));
  }
}

TEST_CASE("matrix model") {
  Vec<FieldScalar> e1{FieldScalar(1), FieldScalar(0), FieldScalar(0), FieldScalar(0),
                      FieldScalar(0)};
  Mat<FieldScalar> m = rep::matrix_of(e1);
  CHECK(m(0, 0) == FieldScalar(1));
  CHECK(m(1, 1) == FieldScalar(-1, 2));
  CHECK(m(2, 2) == FieldScalar(-1, 2));
  CHECK(m(0, 1) == FieldScalar(0));

  std::mt19937_64 rng(4);
  std::normal_distribution<double> gauss;
  for (int t = 0; t < 100; ++t) {
    Vec<double> v(5);
    for (auto& x : v) x = gauss(rng);
    Mat<double> mm = rep::matrix_of(v);
    // trace zero, symmetric
    CHECK(std::fabs(mm(0, 0) + mm(1, 1) + mm(2, 2)) < 1e-14);
    double det = mm(0, 0) * (mm(1, 1) * mm(2, 2) - mm(1, 2) * mm(2, 1)) -
                 mm(0, 1) * (mm(1, 0) * mm(2, 2) - mm(1, 2) * mm(2, 0)) +
                 mm(0, 2) * (mm(1, 0) * mm(2, 1) - mm(1, 1) * mm(2, 0));
    CHECK(rep::upsilon(v) == doctest::Approx(4 * det).epsilon(1e-10));
    // equivariance under conjugation
    Mat<double> g = random_rotation_f(rng);
    Mat<double> lhs = rep::matrix_of(rep::rho(g, 2) * v);
    Mat<double> rhs = g * mm * g.transpose();
    CHECK(mat_residual(lhs, rhs) < 1e-12);
  }
  CHECK(rep::matrix_of(Vec<FieldScalar>(5, FieldScalar(0))).max_abs() == 0.0);
}

TEST_CASE("veronese image and membership") {
  Vec<FieldScalar> x{FieldScalar(1), FieldScalar(0), FieldScalar(0)};
  Vec<FieldScalar> vx = rep::veronese(x);
  CHECK(vx[0] == FieldScalar(1));
  for (int i = 1; i < 5; ++i) CHECK(vx[i] == FieldScalar(0));

  Vec<FieldScalar> y{FieldScalar(0), FieldScalar(1), FieldScalar(0)};
  Vec<FieldScalar> vy = rep::veronese(y);
  CHECK(vy[0] == FieldScalar(-1, 2));
  CHECK(vy[3] == FieldScalar::sqrt3() * FieldScalar(1, 2));

  CHECK_THROWS_AS(rep::veronese(Vec<double>{1.0, 1.0, 0.0}), std::domain_error);

  std::mt19937_64 rng(17);
  std::normal_distribution<double> gauss;
  for (int t = 0; t < 100; ++t) {
    Vec<double> u(3);
    for (auto& c : u) c = gauss(rng);
    double n = std::sqrt(linalg::dot(u, u));
    for (auto& c : u) c /= n;
    Vec<double> v = rep::veronese(u);
    CHECK(rep::g2form(v) == doctest::Approx(1.0).epsilon(1e-12));
    // evenness
    Vec<double> mu{-u[0], -u[1], -u[2]};
    CHECK(linalg::max_abs(Vec<double>{v[0] - rep::veronese(mu)[0], v[1] - rep::veronese(mu)[1],
                                      v[2] - rep::veronese(mu)[2], v[3] - rep::veronese(mu)[3],
                                      v[4] - rep::veronese(mu)[4]}) < 1e-14);
    auto mem = rep::veronese_membership(v, 1e-9);
    CHECK(mem.on_orbit);
    CHECK(mem.invariant_value == doctest::Approx(1.0).epsilon(1e-10));
    // equivariance
    Mat<double> g = random_rotation_f(rng);
    Vec<double> lhs = rep::veronese(g * u);
    Vec<double> rhs = rep::rho(g, 2) * rep::veronese(u);
    for (int i = 0; i < 5; ++i) CHECK(lhs[i] == doctest::Approx(rhs[i]).epsilon(1e-11));
  }
}

TEST_CASE("membership rejects the other orbit and generic points") {
  // e4 has three simple eigenvalues
  Vec<FieldScalar> e4{FieldScalar(0), FieldScalar(0), FieldScalar(0), FieldScalar(1),
                      FieldScalar(0)};
  auto m4 = rep::veronese_membership(e4);
  CHECK_FALSE(m4.on_orbit);
  CHECK_FALSE(m4.eigen_discriminant.is_zero());
  // -e1 is on the mirror orbit: repeated eigenvalue with the opposite sign
  Vec<FieldScalar> me1{FieldScalar(-1), FieldScalar(0), FieldScalar(0), FieldScalar(0),
                       FieldScalar(0)};
  auto mm = rep::veronese_membership(me1);
  CHECK_FALSE(mm.on_orbit);
  CHECK(mm.eigen_discriminant.is_zero());
  CHECK(mm.invariant_value == FieldScalar(-1));
}

TEST_CASE("harmonic cube cone") {
  // the first basis cubic is exactly the harmonic part of x^3
  Vec<FieldScalar> c = rep::cone_element<FieldScalar>(FieldScalar(1), FieldScalar(0),
                                                      FieldScalar(0));
  CHECK(c[0] == FieldScalar(1));
  for (int i = 1; i < 7; ++i) CHECK(c[i] == FieldScalar(0));

  // equivariance: cone(g a) = rho3(g) cone(a) for exact rotations
  std::mt19937_64 rng(3);
  for (int t = 0; t < 5; ++t) {
    Mat<FieldScalar> g = random_exact_rotation(rng);
    std::uniform_int_distribution<int> num(-3, 3);
    Vec<FieldScalar> a{FieldScalar(num(rng)), FieldScalar(num(rng)), FieldScalar(num(rng))};
    Vec<FieldScalar> lhs = rep::cone_element<FieldScalar>((g * a)[0], (g * a)[1], (g * a)[2]);
    Vec<FieldScalar> rhs = rep::rho(g, 3) * rep::cone_element<FieldScalar>(a[0], a[1], a[2]);
    for (int i = 0; i < 7; ++i) CHECK(lhs[i] == rhs[i]);
  }
}

TEST_CASE("harmonic projection annihilates the radial ideal") {
  using P = rep::HomPoly<FieldScalar>;
  // r^2 * x has harmonic part 0
  P r2x = P::zero(3);
  r2x.coeffs[P::monomial_index(3, 3, 0)] = FieldScalar(1);
  r2x.coeffs[P::monomial_index(3, 1, 2)] = FieldScalar(1);
  r2x.coeffs[P::monomial_index(3, 1, 0)] = FieldScalar(1);
  P h = rep::harmonic_part3(r2x);
  for (const auto& cc : h.coeffs) CHECK(cc.is_zero());
}
