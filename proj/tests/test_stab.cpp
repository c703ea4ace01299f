#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "berger/stab.hpp"

using namespace berger;
using linalg::Mat;
using linalg::Vec;
using scalar::FieldScalar;
using stab::RotationGroup;

TEST_CASE("group closures have the catalogued orders") {
  CHECK(stab::ico_group().order() == 60);
  CHECK(stab::oct_group().order() == 24);
  CHECK(stab::tet_group().order() == 12);
  CHECK(stab::dodeca_symmetry_group().order() == 60);
  auto triv = RotationGroup<FieldScalar>::closure({Mat<FieldScalar>::identity(3)});
  CHECK(triv.order() == 1);
  for (int n : {2, 3, 4, 6}) {
    auto z = stab::cyclic_group_exact(n);
    REQUIRE(z.has_value());
    CHECK(z->order() == n);
  }
  CHECK_FALSE(stab::cyclic_group_exact(5).has_value());
  CHECK(stab::cyclic_group_float(5).order() == 5);
  CHECK(stab::dihedral_group_exact(4)->order() == 8);
}

TEST_CASE("non-orthogonal generators are rejected; infinite closure is capped") {
  Mat<FieldScalar> bad{{FieldScalar(2), FieldScalar(0), FieldScalar(0)},
                       {FieldScalar(0), FieldScalar(1), FieldScalar(0)},
                       {FieldScalar(0), FieldScalar(0), FieldScalar(1)}};
  CHECK_THROWS_AS(RotationGroup<FieldScalar>::closure({bad}), std::domain_error);
  // an irrational-angle float rotation generates an effectively infinite group
  double a = 1.0;
  Mat<double> r{{1, 0, 0}, {0, std::cos(a), -std::sin(a)}, {0, std::sin(a), std::cos(a)}};
  CHECK_THROWS_AS(RotationGroup<double>::closure({r}, 64, 1e-12), std::runtime_error);
}

TEST_CASE("icosahedral isotypic decomposition") {
  auto G = stab::ico_group();
  auto dec = stab::invariant_subspaces(G);
  REQUIRE(dec.blocks.size() == 2);
  CHECK(dec.exact);
  std::vector<int> dims = dec.dimensions();
  std::sort(dims.begin(), dims.end());
  CHECK(dims == std::vector<int>{3, 4});

  for (const auto& b : dec.blocks) {
    CHECK(stab::projector_commutation_residual(G, b) == 0.0);
    if (b.dimension == 3) {
      // the 3-block spans the displayed icosahedral plane
      auto target = g2::plane_a_ico<FieldScalar>();
      CHECK(linalg::same_span(b.basis_exact, target.basis()));
      // float version within acceptance tolerance: subspace distance via projectors
      Mat<double> B(7, 3), T(7, 3);
      for (int j = 0; j < 3; ++j) {
        for (int i = 0; i < 7; ++i) {
          B(i, j) = b.basis_exact[j][i].to_double();
          T(i, j) = target.basis()[j][i].to_double();
        }
      }
      Mat<double> PB = B * linalg::inverse(B.transpose() * B) * B.transpose();
      Mat<double> PT = T * linalg::inverse(T.transpose() * T) * T.transpose();
      CHECK((PB - PT).max_abs() < 1e-12);
    }
  }
}

TEST_CASE("octahedral isotypic decomposition") {
  auto G = stab::oct_group();
  auto dec = stab::invariant_subspaces(G);
  REQUIRE(dec.blocks.size() == 3);
  CHECK(dec.exact);
  std::vector<int> dims = dec.dimensions();
  std::sort(dims.begin(), dims.end());
  CHECK(dims == std::vector<int>{1, 3, 3});
  for (const auto& b : dec.blocks) {
    CHECK(stab::projector_commutation_residual(G, b) == 0.0);
    if (b.dimension == 1) {
      // the line is spanned by the fourth basis direction
      Vec<FieldScalar> e4(7, FieldScalar(0));
      e4[3] = FieldScalar(1);
      CHECK(linalg::same_span(b.basis_exact, {e4}));
    }
  }
}

TEST_CASE("trivial group gives a single block") {
  auto triv = RotationGroup<FieldScalar>::closure({Mat<FieldScalar>::identity(3)});
  auto dec = stab::invariant_subspaces(triv);
  REQUIRE(dec.blocks.size() == 1);
  CHECK(dec.blocks[0].dimension == 7);
}

TEST_CASE("invariant plane catalogue") {
  auto large = stab::invariant_three_planes(stab::NamedGroup::kZn_large);
  CHECK(large.isolated.size() == 3);
  CHECK(large.families.empty());

  auto z6 = stab::invariant_three_planes(stab::NamedGroup::kZ6);
  CHECK(z6.isolated.size() == 7);
  int associative = 0;
  for (auto& p : z6.isolated)
    if (p.calibrated_exact() == 1) ++associative;
  CHECK(associative == 3);

  auto z5 = stab::invariant_three_planes(stab::NamedGroup::kZ5);
  CHECK(z5.isolated.size() == 1);
  CHECK(z5.families == std::vector<std::string>{"Q5"});

  auto oct = stab::invariant_three_planes(stab::NamedGroup::kOct);
  CHECK(oct.isolated.size() == 2);
}

TEST_CASE("catalogue planes pass their own stabilizer test") {
  auto z6 = *stab::cyclic_group_exact(6);
  for (auto& p : stab::invariant_three_planes(stab::NamedGroup::kZ6).isolated)
    CHECK(stab::stabilizer_contains(p, z6));
  CHECK(stab::stabilizer_contains(g2::plane_a_ico<FieldScalar>(), stab::ico_group()));
  CHECK(stab::stabilizer_contains(g2::plane_a_oct<FieldScalar>(), stab::oct_group()));
  CHECK(stab::stabilizer_contains(g2::plane_w<FieldScalar>(), stab::oct_group()));
  // the icosahedral plane is not octahedrally invariant and vice versa
  CHECK_FALSE(stab::stabilizer_contains(g2::plane_a_oct<FieldScalar>(), stab::ico_group()));
  CHECK_FALSE(stab::stabilizer_contains(g2::plane_a_ico<FieldScalar>(), stab::oct_group()));
  // trivial group stabilizes anything
  auto triv = RotationGroup<FieldScalar>::closure({Mat<FieldScalar>::identity(3)});
  CHECK(stab::stabilizer_contains(g2::plane_w<FieldScalar>(), triv));
}

TEST_CASE("family members keep their cyclic stabilizer, floats") {
  auto z5 = stab::cyclic_group_float(5);
  auto z4 = stab::cyclic_group_float(4);
  auto z3 = stab::cyclic_group_float(3);
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> unif(0.05, M_PI - 0.05);
  for (int k = 0; k < 10; ++k) {
    double t = unif(rng);
    CHECK(stab::stabilizer_contains(g2::plane_q5(t), z5, 1e-8));
    CHECK(stab::stabilizer_contains(g2::plane_q4a(t), z4, 1e-8));
    std::array<double, 3> a{std::cos(2 * t), std::sin(2 * t), 0.0};
    CHECK(stab::stabilizer_contains(g2::plane_q3(t, a), z3, 1e-8));
  }
}

TEST_CASE("infinitesimal stabilizer dimensions") {
  CHECK(stab::lie_stabilizer_dim(g2::plane_a123<FieldScalar>()) == 1);
  CHECK(stab::lie_stabilizer_dim(g2::plane_a145<FieldScalar>()) == 1);
  CHECK(stab::lie_stabilizer_dim(g2::plane_a167<FieldScalar>()) == 1);
  CHECK(stab::lie_stabilizer_dim(g2::plane_a_ico<FieldScalar>()) == 0);
  CHECK(stab::lie_stabilizer_dim(g2::plane_a_oct<FieldScalar>()) == 0);
  std::mt19937_64 rng(123);
  for (int t = 0; t < 10; ++t) CHECK(stab::lie_stabilizer_dim(g2::random_plane(rng)) == 0);
}

TEST_CASE("conjugation covariance of the catalogue") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> num(-3, 3);
  std::uniform_int_distribution<int> den(1, 4);
  for (int t = 0; t < 3; ++t) {
    Mat<FieldScalar> h = rep::cayley_rotation(FieldScalar(num(rng), den(rng)),
                                              FieldScalar(num(rng), den(rng)),
                                              FieldScalar(num(rng), den(rng)));
    auto conjugated = stab::oct_group().conjugated(h);
    CHECK(conjugated.order() == 24);
    Mat<FieldScalar> R = rep::rho(h, 3);
    auto p = g2::plane_a_oct<FieldScalar>();
    g2::ThreePlane<FieldScalar> moved(R * p.basis()[0], R * p.basis()[1], R * p.basis()[2]);
    CHECK(stab::stabilizer_contains(moved, conjugated));
    CHECK_FALSE(stab::stabilizer_contains(p, conjugated));
  }
}
