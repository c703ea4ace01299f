#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "berger/g2.hpp"
#include "berger/linalg.hpp"
#include "berger/rep.hpp"
#include "berger/scalar.hpp"
#include "berger/so5.hpp"
#include "berger/stab.hpp"

namespace berger::space {

using g2::ThreePlane;
using linalg::Mat;
using linalg::Vec;
using scalar::FieldScalar;
using scalar::Traits;

// Symmetric cubic form on R^5, dense over the 35 degree-3 monomials in the
// coordinates v1..v5 (exponents in colex-descending order as in HomPoly).
template <class K>
struct SymCubic5 {
  Vec<K> coeffs;  // size 35

  static int monomial_count() { return 35; }
  static const std::vector<std::array<int, 5>>& monomials();
  static int monomial_index(const std::array<int, 5>& e);

  // the invariant cubic in the fixed quintuple coordinates
  static SymCubic5 reference();

  // pushforward along a frame: (g . Y)(v) = Y(g^T v)
  SymCubic5 pushforward(const Mat<K>& g) const;

  K evaluate(const Vec<K>& v) const;

  double max_residual(const SymCubic5& o) const {
    double m = 0;
    for (int i = 0; i < 35; ++i)
      m = std::max(m, scalar::abs_embed(K(coeffs[i] - o.coeffs[i])));
    return m;
  }
  bool equal_within(const SymCubic5& o, double tol) const {
    if constexpr (Traits<K>::is_exact) {
      (void)tol;
      return coeffs == o.coeffs;
    } else {
      return max_residual(o) <= tol;
    }
  }
};

// A point of the quotient space, held as the pushforward cubic of a frame.
template <class K>
SymCubic5<K> point_from(const Mat<K>& frame) {
  return SymCubic5<K>::reference().pushforward(frame);
}

template <class K>
bool is_special_orthogonal(const Mat<K>& g, double tol = 1e-9);

// exact test for membership in the image of the 5-dimensional rotation
// action: a special orthogonal matrix preserves the invariant cubic iff it is
// such an image (the stabilizer of the reference surface is exactly that copy)
bool preserves_reference_cubic(const Mat<FieldScalar>& m);
bool preserves_reference_cubic(const Mat<double>& m, double tol);

// float reconstruction of the 3x3 rotation from the action on the quadric
// surface; empty when the action does not come from one
std::optional<Mat<double>> reconstruct_rotation(const Mat<double>& m, double tol = 1e-8);

// ---- curves ----------------------------------------------------------------

// samples of the weight-(-2,1) circle orbit through the coset of `frame`
std::vector<SymCubic5<double>> c_curve(const Mat<double>& frame, int n);

struct CurveProperties {
  double closure_residual = 0;    // distance between parameter 0 and the period
  double variation = 0;           // max distance from the initial point (nonconstancy)
  double stabilizer_drift = 0;    // max drift along the weight-(1,2) circle
  Vec<double> tangent_omega;      // initial tangent in the tangent-module coordinates
  double tangent_cone_residual = 0;
  double torus_collapse_defect = 0;  // max distance of torus samples from the curve
};

CurveProperties c_curve_properties(const Mat<double>& frame, int n = 96);

// frame adapted to (p, span(e1,e2)) with p orthogonal to the plane
Mat<double> adapted_frame(const Vec<double>& p, const Vec<double>& t1, const Vec<double>& t2);

struct GammaFiberCheck {
  double max_membership_defect = 0;  // invariant-value defect of p on each sampled surface
  double max_tangent_defect = 0;     // subspace distance of the sampled tangent plane
  int samples = 0;
};

// every surface on the fiber curve contains p with the prescribed tangent
GammaFiberCheck gamma_fiber_check(const Vec<double>& p, const Vec<double>& t1,
                                  const Vec<double>& t2, int samples = 20);

// ---- homogeneous orbits ----------------------------------------------------

struct OrbitTangent {
  ThreePlane<FieldScalar> plane;
  int span_dimension = 0;       // before reduction (basis elements mapped in)
  int stabilizer_dimension = 0; // subalgebra directions killed at the base point
  double fd_consistency = 0;    // finite-difference check of the translation convention
};

OrbitTangent orbit_tangent_plane(const std::vector<Mat<FieldScalar>>& subalgebra,
                                 const Mat<FieldScalar>& h);

enum class HomCase { kCaseI_SO2SO3, kCaseI_U2, k145, k167, kIco, kOct1, kOct2 };

struct HomogeneousCase {
  HomCase id;
  std::string name;
  liealg::Subalgebra group;
  Mat<FieldScalar> frame;
  // expected stabilizer class: weight > 0 means a circle stabilizer with that
  // rotation weight on the plane; otherwise a finite catalogued group
  int circle_weight = 0;
  enum class Finite { kNone, kIco, kOct } finite = Finite::kNone;
};

const std::vector<HomogeneousCase>& homogeneous_catalogue();

struct HomCaseResult {
  std::string name;
  bool base_associative = false;
  double base_value = 0;
  double worst_translated_value = 1;
  bool stabilizer_verified = false;
  int lie_stabilizer_dim = 0;
  double fd_consistency = 0;
  bool pass = false;
};

HomCaseResult verify_homogeneous_case(const HomogeneousCase& c, int translations = 20,
                                      unsigned seed = 1, double tol = 1e-10);

// ---- surface-pair intersection ---------------------------------------------

struct DodecaIntersection {
  std::vector<Vec<double>> points;   // unit vectors, antipodal pairs both listed
  int antipodal_classes = 0;
  double max_membership_residual = 0;
  bool single_orbit = false;         // one orbit of the icosahedral-type symmetry group
  double displayed_match_residual = 0;  // distance to the closed-form vertex list
};

DodecaIntersection dodeca_intersection(int grid_theta = 256, int grid_phi = 512,
                                       double merge_tol = 1e-6, bool parallel = true);

// the icosahedral frame of the distinguished surface pair
Mat<FieldScalar> ico_case_frame();

// closed-form vertex list of the intersection configuration (20 unit vectors)
std::vector<Vec<double>> dodeca_vertices();

// ---- group intersections -----------------------------------------------------

enum class IntersectionTarget { kRho2SO3, kSO3StdBlock };

// order of {g in candidates : h rho2(g) h^T lies in the target subgroup}
int group_intersection_order(const stab::RotationGroup<FieldScalar>& candidates,
                             const Mat<FieldScalar>& h, IntersectionTarget target);

int group_intersection_order_ico();   // expected 60
int group_intersection_order_oct();   // expected 4

// dense 5x5 matrix exponential (float)
Mat<double> expm5(const Mat<double>& x);

}  // namespace berger::space
