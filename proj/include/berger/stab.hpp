#pragma once

#include <optional>
#include <string>
#include <vector>

#include "berger/g2.hpp"
#include "berger/linalg.hpp"
#include "berger/rep.hpp"
#include "berger/scalar.hpp"

namespace berger::stab {

using g2::ThreePlane;
using linalg::Mat;
using linalg::Vec;
using scalar::FieldScalar;
using scalar::Traits;

// A finite set of special orthogonal 3x3 matrices closed under products.
// Exact scalars use exact matrix equality as the membership test; the float
// instantiation deduplicates within a tolerance.
template <class K>
class RotationGroup {
 public:
  RotationGroup() = default;

  static RotationGroup closure(const std::vector<Mat<K>>& generators, int cap = 10000,
                               double tol = 1e-9) {
    RotationGroup g;
    g.tol_ = tol;
    g.generators_ = generators;
    for (const auto& m : generators) {
      Mat<K> defect = m.transpose() * m - Mat<K>::identity(3);
      if (!(defect.max_abs() <= (Traits<K>::is_exact ? 0.0 : tol)))
        throw std::domain_error("RotationGroup: generator is not orthogonal");
    }
    g.elements_.push_back(Mat<K>::identity(3));
    std::vector<Mat<K>> frontier = g.elements_;
    while (!frontier.empty()) {
      std::vector<Mat<K>> next;
      for (const auto& f : frontier)
        for (const auto& gen : generators) {
          Mat<K> h = f * gen;
          if (!g.contains(h)) {
            if (static_cast<int>(g.elements_.size()) >= cap)
              throw std::runtime_error("RotationGroup: closure exceeds element cap");
            g.elements_.push_back(h);
            next.push_back(h);
          }
        }
      frontier = std::move(next);
    }
    return g;
  }

  bool contains(const Mat<K>& m) const {
    for (const auto& e : elements_) {
      if constexpr (Traits<K>::is_exact) {
        if (e == m) return true;
      } else {
        if ((e - m).max_abs() <= tol_) return true;
      }
    }
    return false;
  }

  int order() const { return static_cast<int>(elements_.size()); }
  const std::vector<Mat<K>>& elements() const { return elements_; }
  const std::vector<Mat<K>>& generators() const { return generators_; }

  RotationGroup conjugated(const Mat<K>& h) const {
    RotationGroup g;
    g.tol_ = tol_;
    Mat<K> hi = h.transpose();
    for (const auto& e : elements_) g.elements_.push_back(h * e * hi);
    for (const auto& e : generators_) g.generators_.push_back(h * e * hi);
    return g;
  }

 private:
  std::vector<Mat<K>> elements_;
  std::vector<Mat<K>> generators_;
  double tol_ = 1e-9;
};

// ---- catalogue generators (exact) ----------------------------------------

Mat<FieldScalar> rot_z_quarter();          // quarter turn about z
Mat<FieldScalar> cyclic_xyz();             // coordinate 3-cycle
Mat<FieldScalar> half_turn_z();            // diag(-1,-1,1)
Mat<FieldScalar> swap_yz_flip_x();         // octahedral edge flip

RotationGroup<FieldScalar> ico_group();
RotationGroup<FieldScalar> oct_group();
RotationGroup<FieldScalar> tet_group();
// the rotation symmetries of the vertex configuration cut out by the
// icosahedral surface pair (second icosahedral copy, conjugate radicals)
RotationGroup<FieldScalar> dodeca_symmetry_group();

// cyclic group of rotations about the x-axis; exact for n in {1,2,3,4,6,8,12}
std::optional<RotationGroup<FieldScalar>> cyclic_group_exact(int n);
RotationGroup<double> cyclic_group_float(int n);
std::optional<RotationGroup<FieldScalar>> dihedral_group_exact(int n);

// ---- isotypic decomposition ----------------------------------------------

struct IsotypicBlock {
  std::vector<Vec<FieldScalar>> basis_exact;  // empty when only float succeeded
  std::vector<Vec<double>> basis;             // always populated
  scalar::Rational eigenvalue;                // of the averaged commutant seed (exact path)
  int dimension = 0;
};

struct IsotypicDecomposition {
  std::vector<IsotypicBlock> blocks;
  bool exact = false;
  int seed_used = 0;
  std::vector<int> dimensions() const {
    std::vector<int> d;
    for (const auto& b : blocks) d.push_back(b.dimension);
    return d;
  }
};

// Commutant-based splitting of the 7-dimensional module under G: a rational
// seed matrix is averaged over the group; eigenspaces of the average are the
// isotypic pieces. Exact path requires the averaged eigenvalues to be
// recognizable rationals (they are for the catalogued groups); otherwise the
// float eigensplit is returned.
IsotypicDecomposition invariant_subspaces(const RotationGroup<FieldScalar>& G);

// max over elements of | rho3(g) P - P rho3(g) | for the orthogonal projector
// onto the block; exact 0 for exact blocks.
double projector_commutation_residual(const RotationGroup<FieldScalar>& G,
                                      const IsotypicBlock& block);

// ---- invariant 3-planes ---------------------------------------------------

struct InvariantPlanes {
  // isolated invariant 3-planes (exact)
  std::vector<ThreePlane<FieldScalar>> isolated;
  std::vector<std::string> isolated_names;
  // positive-dimensional families by constructor name ("Q5", "Q4a", "Q4b", "Q3", "P")
  std::vector<std::string> families;
  bool complete = true;  // false when isomorphic blocks prevent enumeration
};

enum class NamedGroup { kIco, kOct, kTet, kZ3, kZ4, kZ5, kZ6, kZn_large, kTrivial };

InvariantPlanes invariant_three_planes(NamedGroup which);

// ---- stabilizer computations ----------------------------------------------

// dimension of {X in so(3) : derivation(X) maps the plane into itself}
template <class K>
int lie_stabilizer_dim(const ThreePlane<K>& plane, double tol = 1e-10);

// true iff every group element maps the plane onto itself (as a subspace)
template <class K, class KG>
bool stabilizer_contains(const ThreePlane<K>& plane, const RotationGroup<KG>& G,
                         double tol = 1e-9);

extern template int lie_stabilizer_dim<FieldScalar>(const ThreePlane<FieldScalar>&, double);
extern template int lie_stabilizer_dim<double>(const ThreePlane<double>&, double);

}  // namespace berger::stab
