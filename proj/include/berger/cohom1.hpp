#pragma once

#include <array>
#include <vector>

#include "berger/coframe.hpp"
#include "berger/form.hpp"
#include "berger/linalg.hpp"
#include "berger/scalar.hpp"

namespace berger::cohom1 {

using liealg::Form;
using linalg::Mat;
using linalg::Vec;
using scalar::FieldScalar;

// coframe order of the block-diagonal splitting: m1, m2, m3, n1, n2, n3
inline constexpr int kMu(int i) { return i - 1; }
inline constexpr int kNu(int i) { return 2 + i; }

// basis of the stabilizer subalgebra of the first axis, dual to the adapted coframe
std::vector<Mat<FieldScalar>> so4_basis();
const liealg::StructureConstants& so4_structure();

template <class K>
const liealg::CoframeCalculus<K>& so4_calculus();

// geodesic section through the singular orbit (rotation in the 1-4 plane,
// unit speed in the reparametrized time)
template <class K>
Mat<K> section_frame(const K& cos_t, const K& sin_t);

// 7 x 7 pullback table: row i gives the tangent coframe component omega_{i+1}
// over the columns (m1, m2, m3, n1, n2, n3, dt); computed from first principles
template <class K>
Mat<K> pullback_matrix(const K& cos_t, const K& sin_t);

// the reference closed-form table for the same data
template <class K>
Mat<K> pullback_expected(const K& cos_t, const K& sin_t);

// largest entry difference between the two tables
double pullback_residual(double t);

struct OrbitStructure {
  Form<double> omega2;       // degree-2 structure form on the orbit coframe
  Form<double> re_upsilon;   // degree-3
  double omega_cubed = 0;    // top coefficient of omega^3
  int coframe_rank = 0;      // rank of the orbit part of the pullback (6 on principal orbits)
  bool principal = false;
};

OrbitStructure orbit_su3(double t);

struct HalfFlatCheck {
  double constant = 0;         // d(re_upsilon) / omega^2
  double residual = 0;         // proportionality defect
  bool pass = false;
};
HalfFlatCheck verify_nearly_half_flat(double t);

struct NotNkCheck {
  double defect = 0;           // norm of d(omega) minus its best multiple of re_upsilon
  double domega_norm = 0;
  bool pass = false;           // defect bounded away from zero
};
NotNkCheck verify_not_nearly_kahler(double t);

// restriction identity: the ambient 3-form pulled back to the orbit equals the
// orbit 3-form (their difference as forms over the orbit coframe)
double phi_restriction_residual(double t);

struct SlagCheck {
  double re_upsilon_value = 0;
  double phi_value = 0;
  bool re_calibrated = false;
  bool phi_calibrated = false;
  bool implication_holds = false;
};
// test the implication on a specific tangent 3-plane, given in tangent-module
// coordinates with vanishing fourth component
SlagCheck slag_implies_assoc(double t, const std::vector<Vec<double>>& plane_basis,
                             double tol = 1e-9);

// ascend the orbit 3-form restricted to the orbit tangent space to produce a
// calibrated plane; used to exercise the implication non-vacuously
std::vector<Vec<double>> calibrated_orbit_plane(double t, unsigned seed);

struct StabilizerSample {
  int continuous_dim = 0;
  int finite_order = 0;  // within the octahedral candidates
};
StabilizerSample orbit_stabilizer(double t);

// singular parameters detected by coframe rank drop on a scan of [0, pi]
std::vector<double> singular_parameters(int samples = 2000);

}  // namespace berger::cohom1
