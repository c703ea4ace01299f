#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "berger/form.hpp"
#include "berger/linalg.hpp"
#include "berger/rep.hpp"
#include "berger/scalar.hpp"
#include "berger/so5.hpp"

namespace berger::g2 {

using liealg::Form;
using liealg::Mono;
using linalg::Mat;
using linalg::Vec;
using scalar::FieldScalar;
using scalar::Traits;

// The seven monomials of the invariant 3-form, as 1-based tangent indices with
// signs; shared by the exterior-algebra form and the pointwise evaluator.
struct PhiTerm {
  std::array<int, 3> idx;
  int sign;
};
inline const std::array<PhiTerm, 7>& phi_terms() {
  static const std::array<PhiTerm, 7> t{{{{1, 2, 3}, +1},
                                         {{1, 4, 5}, +1},
                                         {{1, 6, 7}, -1},
                                         {{2, 4, 6}, +1},
                                         {{2, 5, 7}, +1},
                                         {{3, 4, 7}, +1},
                                         {{3, 5, 6}, -1}}};
  return t;
}

template <class K>
Form<K> phi_form() {
  Form<K> f;
  for (const auto& t : phi_terms()) {
    Mono m = liealg::mono_of({liealg::omega_index(t.idx[0]), liealg::omega_index(t.idx[1]),
                              liealg::omega_index(t.idx[2])});
    f.set(m, t.sign > 0 ? Traits<K>::one() : K() - Traits<K>::one());
  }
  return f;
}

// Hodge star on forms built from the seven omega directions, with the metric
// making that coframe orthonormal and volume w1^...^w7.
template <class K>
Form<K> hodge7(const Form<K>& f) {
  Mono full = 0;
  for (int i = 1; i <= 7; ++i) full |= static_cast<Mono>(1u << liealg::omega_index(i));
  Form<K> out;
  for (const auto& [m, c] : f.terms()) {
    if (m & ~full) throw std::domain_error("hodge7: form has connection-direction components");
    Mono comp = static_cast<Mono>(full & ~m);
    int sign = liealg::merge_sign(m, comp);
    out.accumulate(comp, sign > 0 ? c : K() - c);
  }
  return out;
}

template <class K>
Form<K> star_phi_form() {
  return hodge7(phi_form<K>());
}

template <class K>
Form<K> volume_form() {
  Mono full = 0;
  for (int i = 1; i <= 7; ++i) full |= static_cast<Mono>(1u << liealg::omega_index(i));
  return Form<K>::monomial(full, Traits<K>::one());
}

struct NearlyParallelCheck {
  double dphi_residual = 0;       // | d(phi) - 4 star(phi) |
  double hodge_residual = 0;      // | star(phi) - reference 4-form |
  double dstar_norm = 0;          // | d(star(phi)) |, measured
  bool pass = false;
};

template <class K>
NearlyParallelCheck verify_nearly_parallel(double tol = 1e-12) {
  const auto& calc = liealg::so5_calculus<K>();
  Form<K> phi = phi_form<K>();
  Form<K> star = star_phi_form<K>();
  NearlyParallelCheck r;
  r.dphi_residual = calc.d(phi).max_residual(K(4) * star);
  // reference 4-form, written out independently of hodge7
  Form<K> ref;
  auto add4 = [&](int a, int b, int c, int d, int s) {
    ref.set(liealg::mono_of({liealg::omega_index(a), liealg::omega_index(b),
                             liealg::omega_index(c), liealg::omega_index(d)}),
            s > 0 ? Traits<K>::one() : K() - Traits<K>::one());
  };
  add4(4, 5, 6, 7, +1);
  add4(2, 3, 6, 7, +1);
  add4(2, 3, 4, 5, -1);
  add4(1, 3, 5, 7, +1);
  add4(1, 3, 4, 6, +1);
  add4(1, 2, 5, 6, +1);
  add4(1, 2, 4, 7, -1);
  r.hodge_residual = star.max_residual(ref);
  r.dstar_norm = calc.d(star).max_abs();
  double bound = Traits<K>::is_exact ? 0.0 : tol;
  r.pass = r.dphi_residual <= bound && r.hodge_residual <= bound;
  return r;
}

// phi evaluated on three tangent vectors in omega coordinates.
template <class K>
K phi_eval(const Vec<K>& u, const Vec<K>& v, const Vec<K>& w) {
  K total = Traits<K>::zero();
  for (const auto& t : phi_terms()) {
    int a = t.idx[0] - 1, b = t.idx[1] - 1, c = t.idx[2] - 1;
    K det = u[a] * (v[b] * w[c] - v[c] * w[b]) - v[a] * (u[b] * w[c] - u[c] * w[b]) +
            w[a] * (u[b] * v[c] - u[c] * v[b]);
    total += (t.sign > 0) ? det : K() - det;
  }
  return total;
}

// Oriented 3-plane in the 7-dimensional tangent module, stored as an
// orthogonal (not necessarily unit) basis so exact scalars survive.
template <class K>
class ThreePlane {
 public:
  ThreePlane(const Vec<K>& v1, const Vec<K>& v2, const Vec<K>& v3, double tol = 1e-12) {
    std::vector<Vec<K>> ortho = linalg::orthogonalize<K>({v1, v2, v3}, tol);
    if (ortho.size() != 3) throw std::domain_error("ThreePlane: spanning vectors are dependent");
    basis_ = std::move(ortho);
  }
  static ThreePlane from_columns(const Mat<K>& m) {
    return ThreePlane(m.col(0), m.col(1), m.col(2));
  }

  const std::vector<Vec<K>>& basis() const { return basis_; }
  Mat<K> basis_matrix() const {
    Mat<K> m(7, 3);
    for (int j = 0; j < 3; ++j) m.set_col(j, basis_[j]);
    return m;
  }

  K norm2_product() const {
    K p = Traits<K>::one();
    for (const auto& b : basis_) p = p * linalg::dot(b, b);
    return p;
  }
  K phi_value_unnormalized() const { return phi_eval(basis_[0], basis_[1], basis_[2]); }

  // calibration value as a double (always available)
  double calibration_value() const {
    double num = Traits<K>::embed(phi_value_unnormalized());
    double den = std::sqrt(Traits<K>::embed(norm2_product()));
    return num / den;
  }

  // exact associativity test: value is +1 iff phi^2 equals the Gram product
  // and phi is positive; -1 with the sign flipped
  int calibrated_exact() const {
    static_assert(Traits<K>::is_exact);
    K p = phi_value_unnormalized();
    if (p * p == norm2_product()) return p.to_double() > 0 ? +1 : -1;
    return 0;
  }

  // exact calibration value when the Gram determinant has a field square root
  std::optional<FieldScalar> calibration_value_exact() const {
    static_assert(Traits<K>::is_exact);
    FieldScalar root;
    if (!scalar::field_sqrt(norm2_product(), &root)) return std::nullopt;
    return phi_value_unnormalized() / root;
  }

  ThreePlane orientation_flipped() const {
    ThreePlane p = *this;
    std::swap(p.basis_[1], p.basis_[2]);
    return p;
  }

  // subspace (orientation-blind) comparison
  bool same_subspace(const ThreePlane& o, double tol = 1e-9) const {
    return linalg::same_span(basis_, o.basis_, tol);
  }

 private:
  std::vector<Vec<K>> basis_;
};

template <class K>
Vec<K> h3_unit(int i) {
  Vec<K> v(7, Traits<K>::zero());
  v[i - 1] = Traits<K>::one();
  return v;
}

// ---- catalogued planes and families ------------------------------------

template <class K>
ThreePlane<K> plane_a123() {
  return ThreePlane<K>(h3_unit<K>(1), h3_unit<K>(2), h3_unit<K>(3));
}
template <class K>
ThreePlane<K> plane_a145() {
  return ThreePlane<K>(h3_unit<K>(1), h3_unit<K>(4), h3_unit<K>(5));
}
template <class K>
ThreePlane<K> plane_a167() {
  return ThreePlane<K>(h3_unit<K>(1), h3_unit<K>(7), h3_unit<K>(6));
}

template <class K>
ThreePlane<K> plane_a_ico() {
  K s3 = scalar::from_field<K>(FieldScalar::sqrt3());
  K s5 = scalar::from_field<K>(FieldScalar::sqrt5());
  Vec<K> v1(7, Traits<K>::zero()), v2(7, Traits<K>::zero()), v3(7, Traits<K>::zero());
  v1[0] = Traits<K>::one();
  v1[4] = s3;
  v2[1] = s3 * (s5 - Traits<K>::one());
  v2[5] = K() - (K(3) + s5);
  v3[2] = s3 * (Traits<K>::one() + s5);
  v3[6] = K(3) - s5;
  return ThreePlane<K>(v1, v2, v3);
}

template <class K>
ThreePlane<K> plane_a_oct() {
  K s3 = scalar::from_field<K>(FieldScalar::sqrt3());
  K s5 = scalar::from_field<K>(FieldScalar::sqrt5());
  Vec<K> v2(7, Traits<K>::zero()), v3(7, Traits<K>::zero());
  v2[1] = s3;
  v2[5] = s5;
  v3[2] = s3;
  v3[6] = K() - s5;
  return ThreePlane<K>(h3_unit<K>(1), v2, v3);
}

template <class K>
ThreePlane<K> plane_w() {
  K s3 = scalar::from_field<K>(FieldScalar::sqrt3());
  K s5 = scalar::from_field<K>(FieldScalar::sqrt5());
  Vec<K> v2(7, Traits<K>::zero()), v3(7, Traits<K>::zero());
  v2[1] = s5;
  v2[5] = K() - s3;
  v3[2] = s5;
  v3[6] = s3;
  return ThreePlane<K>(h3_unit<K>(5), v2, v3);
}

// One-angle family interpolating the octahedral plane and its complement in
// the isotypic pairing; calibration value is cos(3 theta).
template <class K>
ThreePlane<K> plane_p_theta(const K& c, const K& s) {
  K s3 = scalar::from_field<K>(FieldScalar::sqrt3());
  K s5 = scalar::from_field<K>(FieldScalar::sqrt5());
  Vec<K> v1(7, Traits<K>::zero()), v2(7, Traits<K>::zero()), v3(7, Traits<K>::zero());
  v1[0] = c;
  v1[4] = s;
  v2[1] = s3 * c - s5 * s;
  v2[5] = s5 * c + s3 * s;
  v3[2] = s3 * c + s5 * s;
  v3[6] = K() - s5 * c + s3 * s;
  return ThreePlane<K>(v1, v2, v3);
}

template <class K>
ThreePlane<K> plane_q5(const K& c, const K& s) {
  Vec<K> v2(7, Traits<K>::zero()), v3(7, Traits<K>::zero());
  v2[3] = c;
  v2[6] = s;
  v3[4] = c;
  v3[5] = s;
  return ThreePlane<K>(h3_unit<K>(1), v2, v3);
}

template <class K>
ThreePlane<K> plane_q4a(const K& c, const K& s) {
  Vec<K> v2(7, Traits<K>::zero()), v3(7, Traits<K>::zero());
  v2[1] = c;
  v2[6] = s;
  v3[2] = c;
  v3[5] = s;
  return ThreePlane<K>(h3_unit<K>(1), v2, v3);
}

template <class K>
ThreePlane<K> plane_q4b(const K& cpsi, const K& spsi, const K& c, const K& s) {
  Vec<K> v1(7, Traits<K>::zero()), v2(7, Traits<K>::zero()), v3(7, Traits<K>::zero());
  v1[3] = cpsi;
  v1[4] = spsi;
  v2[1] = c;
  v2[6] = s;
  v3[2] = c;
  v3[5] = s;
  return ThreePlane<K>(v1, v2, v3);
}

template <class K>
ThreePlane<K> plane_q3(const K& c, const K& s, const K& a1, const K& a6, const K& a7) {
  Vec<K> v1(7, Traits<K>::zero()), v2(7, Traits<K>::zero()), v3(7, Traits<K>::zero());
  v1[0] = a1;
  v1[5] = a6;
  v1[6] = a7;
  v2[1] = c;
  v2[4] = s;
  v3[2] = c;
  v3[3] = s;
  return ThreePlane<K>(v1, v2, v3);
}

struct FamilyPoint {
  std::string family;
  std::vector<double> params;
  double value;
};

// double-angle conveniences
inline ThreePlane<double> plane_p_theta(double t) { return plane_p_theta(std::cos(t), std::sin(t)); }
inline ThreePlane<double> plane_q5(double t) { return plane_q5(std::cos(t), std::sin(t)); }
inline ThreePlane<double> plane_q4a(double t) { return plane_q4a(std::cos(t), std::sin(t)); }
inline ThreePlane<double> plane_q4b(double psi, double t) {
  return plane_q4b(std::cos(psi), std::sin(psi), std::cos(t), std::sin(t));
}
inline ThreePlane<double> plane_q3(double t, const std::array<double, 3>& a) {
  return plane_q3(std::cos(t), std::sin(t), a[0], a[1], a[2]);
}

// ---- cone of harmonic cubes ---------------------------------------------

struct ConeResult {
  bool member = false;
  std::array<double, 3> witness{};  // direction-plus-scale vector a
  double residual = 0;
};

// nearest cone element via a sphere grid for the direction plus closed-form
// radial scaling, refined by Gauss-Newton.
ConeResult cone_membership(const Vec<double>& v, int grid_points = 10000,
                           double threshold = 1e-8);

// ---- Grassmannian ascent --------------------------------------------------

struct AscentOptions {
  double step = 0.1;
  int max_iterations = 500;
  double tolerance = 1e-10;
};

struct AscentResult {
  ThreePlane<double> plane;
  double value = 0;
  int iterations = 0;
  bool converged = false;
};

AscentResult nearest_associative(const ThreePlane<double>& start, AscentOptions opts = {});

// random orthonormal 3-frame in R^7
ThreePlane<double> random_plane(std::mt19937_64& rng);

}  // namespace berger::g2
