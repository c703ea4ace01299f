#include "berger/stab.hpp"

#include <cmath>
#include <functional>
#include <random>

namespace berger::stab {

using scalar::Rational;

Mat<FieldScalar> rot_z_quarter() {
  FieldScalar z(0), o(1);
  return Mat<FieldScalar>{{z, FieldScalar(-1), z}, {o, z, z}, {z, z, o}};
}

Mat<FieldScalar> cyclic_xyz() {
  FieldScalar z(0), o(1);
  return Mat<FieldScalar>{{z, z, o}, {o, z, z}, {z, o, z}};
}

Mat<FieldScalar> half_turn_z() {
  FieldScalar z(0);
  return Mat<FieldScalar>{{FieldScalar(-1), z, z}, {z, FieldScalar(-1), z}, {z, z, FieldScalar(1)}};
}

Mat<FieldScalar> swap_yz_flip_x() {
  FieldScalar z(0), o(1);
  return Mat<FieldScalar>{{FieldScalar(-1), z, z}, {z, z, o}, {z, o, z}};
}

RotationGroup<FieldScalar> ico_group() {
  FieldScalar z(0), h(1, 2);
  FieldScalar tau = FieldScalar::tau();
  FieldScalar ti = tau - FieldScalar(1);  // 1/tau
  Mat<FieldScalar> five{{h, FieldScalar(0) - h * tau, h * ti},
                        {h * tau, h * ti, FieldScalar(0) - h},
                        {h * ti, h, h * tau}};
  return RotationGroup<FieldScalar>::closure({half_turn_z(), cyclic_xyz(), five});
}

RotationGroup<FieldScalar> oct_group() {
  return RotationGroup<FieldScalar>::closure({rot_z_quarter(), cyclic_xyz(), swap_yz_flip_x()});
}

RotationGroup<FieldScalar> tet_group() {
  return RotationGroup<FieldScalar>::closure({half_turn_z(), cyclic_xyz()});
}

RotationGroup<FieldScalar> dodeca_symmetry_group() {
  // conjugate-radical icosahedral generator: preserves the vertex set of the
  // surface-pair intersection
  FieldScalar h(1, 2);
  FieldScalar tau = FieldScalar::tau();
  FieldScalar st = FieldScalar(0) - (tau - FieldScalar(1));   // -1/tau
  FieldScalar sti = FieldScalar(0) - tau;                     // conjugate of 1/tau
  Mat<FieldScalar> five{{h, FieldScalar(0) - h * st, h * sti},
                        {h * st, h * sti, FieldScalar(0) - h},
                        {h * sti, h, h * st}};
  return RotationGroup<FieldScalar>::closure({half_turn_z(), cyclic_xyz(), five});
}

std::optional<RotationGroup<FieldScalar>> cyclic_group_exact(int n) {
  FieldScalar c, s;
  FieldScalar half(1, 2);
  switch (n) {
    case 1: c = FieldScalar(1); s = FieldScalar(0); break;
    case 2: c = FieldScalar(-1); s = FieldScalar(0); break;
    case 3: c = FieldScalar(-1, 2); s = FieldScalar::sqrt3() * half; break;
    case 4: c = FieldScalar(0); s = FieldScalar(1); break;
    case 6: c = half; s = FieldScalar::sqrt3() * half; break;
    case 8: c = FieldScalar::sqrt2() * half; s = c; break;
    case 12: c = FieldScalar::sqrt3() * half; s = half; break;
    default: return std::nullopt;
  }
  FieldScalar z(0), o(1);
  Mat<FieldScalar> r{{o, z, z}, {z, c, FieldScalar(0) - s}, {z, s, c}};
  return RotationGroup<FieldScalar>::closure({r});
}

RotationGroup<double> cyclic_group_float(int n) {
  double a = 2 * M_PI / n;
  Mat<double> r{{1, 0, 0}, {0, std::cos(a), -std::sin(a)}, {0, std::sin(a), std::cos(a)}};
  return RotationGroup<double>::closure({r}, 10000, 1e-9);
}

std::optional<RotationGroup<FieldScalar>> dihedral_group_exact(int n) {
  auto cyc = cyclic_group_exact(n);
  if (!cyc) return std::nullopt;
  std::vector<Mat<FieldScalar>> gens = cyc->generators();
  gens.push_back(half_turn_z());
  return RotationGroup<FieldScalar>::closure(gens);
}

namespace {

std::vector<Mat<FieldScalar>> rho3_elements(const RotationGroup<FieldScalar>& G) {
  std::vector<Mat<FieldScalar>> out;
  out.reserve(G.order());
  for (const auto& g : G.elements()) out.push_back(rep::rho(g, 3));
  return out;
}

// Schur test: blocks carry isomorphic subrepresentations iff averaging a
// random intertwiner candidate over the group is nonzero.
bool blocks_isomorphic(const std::vector<Mat<double>>& reps, const std::vector<Vec<double>>& bi,
                       const std::vector<Vec<double>>& bj, std::mt19937_64& rng) {
  int di = static_cast<int>(bi.size()), dj = static_cast<int>(bj.size());
  if (di != dj) return false;
  Mat<double> Bi(7, di), Bj(7, dj);
  for (int c = 0; c < di; ++c) {
    Vec<double> v = bi[c];
    double n = std::sqrt(linalg::dot(v, v));
    for (int r = 0; r < 7; ++r) Bi(r, c) = v[r] / n;
  }
  for (int c = 0; c < dj; ++c) {
    Vec<double> v = bj[c];
    double n = std::sqrt(linalg::dot(v, v));
    for (int r = 0; r < 7; ++r) Bj(r, c) = v[r] / n;
  }
  std::normal_distribution<double> gauss;
  for (int attempt = 0; attempt < 3; ++attempt) {
    Mat<double> X(dj, di);
    for (int r = 0; r < dj; ++r)
      for (int c = 0; c < di; ++c) X(r, c) = gauss(rng);
    Mat<double> T(dj, di);
    for (const auto& R : reps) {
      Mat<double> Ri = Bi.transpose() * R * Bi;
      Mat<double> Rj = Bj.transpose() * R * Bj;
      T = T + Rj * X * Ri.transpose();
    }
    if (T.max_abs() > 1e-8 * reps.size()) return true;
  }
  return false;
}

// candidate rational eigenvalue from a double, by small continued fractions
std::optional<Rational> rational_guess(double x, long max_den = 100000) {
  long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double v = x;
  for (int it = 0; it < 40; ++it) {
    double fl = std::floor(v);
    long a = static_cast<long>(fl);
    long p2 = a * p1 + p0, q2 = a * q1 + q0;
    if (q2 > max_den || q2 < 0) break;
    p0 = p1; q0 = q1; p1 = p2; q1 = q2;
    double num = static_cast<double>(p1), den = static_cast<double>(q1);
    if (std::fabs(x - num / den) < 1e-11 * std::max(1.0, std::fabs(x))) return Rational(p1, q1);
    double frac = v - fl;
    if (std::fabs(frac) < 1e-13) break;
    v = 1.0 / frac;
  }
  return std::nullopt;
}

}  // namespace

IsotypicDecomposition invariant_subspaces(const RotationGroup<FieldScalar>& G) {
  IsotypicDecomposition out;
  auto reps = rho3_elements(G);
  std::mt19937_64 rng(20240901);
  std::uniform_int_distribution<int> coeff(1, 23);

  for (int seed = 0; seed < 8; ++seed) {
    // rational diagonal seed, averaged over the group: exact commutant element
    Mat<FieldScalar> A(7, 7);
    for (int i = 0; i < 7; ++i)
      A(i, i) = FieldScalar(seed == 0 ? (i + 1) : coeff(rng));
    Mat<FieldScalar> S(7, 7);
    for (const auto& R : reps) S = S + R * A * R.transpose();
    FieldScalar inv_order = FieldScalar(1, G.order());
    S = inv_order * S;

    // float eigensplit for the block structure
    Mat<double> Sf(7, 7);
    for (int i = 0; i < 7; ++i)
      for (int j = 0; j < 7; ++j) Sf(i, j) = S(i, j).to_double();
    std::vector<double> ev;
    Mat<double> V(7, 7);
    linalg::sym_eigen(Sf, &ev, &V);
    std::vector<std::pair<double, std::vector<int>>> clusters;
    for (int i = 0; i < 7; ++i) {
      if (!clusters.empty() && std::fabs(ev[i] - clusters.back().first) < 1e-10)
        clusters.back().second.push_back(i);
      else
        clusters.push_back({ev[i], {i}});
    }

    // exact path: every cluster eigenvalue must verify as a rational with an
    // exact kernel of the right dimension
    bool exact_ok = true;
    std::vector<IsotypicBlock> blocks;
    for (const auto& [lam, idxs] : clusters) {
      IsotypicBlock b;
      b.dimension = static_cast<int>(idxs.size());
      for (int i : idxs) b.basis.push_back(V.col(i));
      auto guess = rational_guess(lam);
      if (exact_ok && guess) {
        Mat<FieldScalar> shifted = S;
        for (int d = 0; d < 7; ++d) shifted(d, d) -= FieldScalar(*guess);
        auto null_basis = linalg::kernel(shifted);
        if (static_cast<int>(null_basis.size()) == b.dimension) {
          b.eigenvalue = *guess;
          b.basis_exact = linalg::orthogonalize<FieldScalar>(null_basis);
        } else {
          exact_ok = false;
        }
      } else {
        exact_ok = false;
      }
      blocks.push_back(std::move(b));
    }

    // distinct eigenvalues required; otherwise resample
    bool distinct = true;
    for (size_t i = 1; i < clusters.size(); ++i)
      if (std::fabs(clusters[i].first - clusters[i - 1].first) < 1e-8) distinct = false;
    int total = 0;
    for (const auto& b : blocks) total += b.dimension;
    if (!distinct || total != 7) continue;

    // merge eigenspaces that carry isomorphic subrepresentations: the
    // eigensplit refines the isotypic decomposition when multiplicities occur
    std::vector<Mat<double>> reps_f;
    for (const auto& R : reps) {
      Mat<double> Rf(7, 7);
      for (int i = 0; i < 7; ++i)
        for (int j = 0; j < 7; ++j) Rf(i, j) = R(i, j).to_double();
      reps_f.push_back(std::move(Rf));
    }
    std::vector<int> parent(blocks.size());
    for (size_t i = 0; i < parent.size(); ++i) parent[i] = static_cast<int>(i);
    std::function<int(int)> find = [&](int x) {
      return parent[x] == x ? x : parent[x] = find(parent[x]);
    };
    for (size_t i = 0; i < blocks.size(); ++i)
      for (size_t j = i + 1; j < blocks.size(); ++j)
        if (blocks_isomorphic(reps_f, blocks[i].basis, blocks[j].basis, rng))
          parent[find(static_cast<int>(j))] = find(static_cast<int>(i));
    std::vector<IsotypicBlock> merged;
    for (size_t i = 0; i < blocks.size(); ++i) {
      if (find(static_cast<int>(i)) != static_cast<int>(i)) continue;
      IsotypicBlock b = blocks[i];
      for (size_t j = i + 1; j < blocks.size(); ++j) {
        if (find(static_cast<int>(j)) != static_cast<int>(i)) continue;
        b.dimension += blocks[j].dimension;
        for (const auto& v : blocks[j].basis) b.basis.push_back(v);
        if (!b.basis_exact.empty() && !blocks[j].basis_exact.empty())
          for (const auto& v : blocks[j].basis_exact) b.basis_exact.push_back(v);
        else
          b.basis_exact.clear();
      }
      merged.push_back(std::move(b));
    }

    out.blocks = std::move(merged);
    out.exact = exact_ok;
    out.seed_used = seed;
    if (exact_ok) return out;
  }
  if (out.blocks.empty()) throw std::runtime_error("invariant_subspaces: no usable seed");
  return out;  // float-only fallback
}

double projector_commutation_residual(const RotationGroup<FieldScalar>& G,
                                      const IsotypicBlock& block) {
  auto reps = rho3_elements(G);
  double worst = 0;
  if (!block.basis_exact.empty()) {
    // exact projector P = B (B^T B)^{-1} B^T
    int d = static_cast<int>(block.basis_exact.size());
    Mat<FieldScalar> B(7, d);
    for (int j = 0; j < d; ++j) B.set_col(j, block.basis_exact[j]);
    Mat<FieldScalar> P = B * linalg::inverse(B.transpose() * B) * B.transpose();
    for (const auto& R : reps) {
      Mat<FieldScalar> comm = R * P - P * R;
      worst = std::max(worst, comm.max_abs());
    }
    return worst;
  }
  int d = static_cast<int>(block.basis.size());
  Mat<double> B(7, d);
  for (int j = 0; j < d; ++j) B.set_col(j, block.basis[j]);
  Mat<double> P = B * linalg::inverse(B.transpose() * B) * B.transpose();
  for (const auto& g : G.elements()) {
    Mat<double> Rf(7, 7);
    Mat<FieldScalar> R = rep::rho(g, 3);
    for (int i = 0; i < 7; ++i)
      for (int j = 0; j < 7; ++j) Rf(i, j) = R(i, j).to_double();
    worst = std::max(worst, (Rf * P - P * Rf).max_abs());
  }
  return worst;
}

InvariantPlanes invariant_three_planes(NamedGroup which) {
  InvariantPlanes out;
  auto add = [&](ThreePlane<FieldScalar> p, const std::string& n) {
    out.isolated.push_back(std::move(p));
    out.isolated_names.push_back(n);
  };
  auto span3 = [&](int a, int b, int c) {
    return ThreePlane<FieldScalar>(g2::h3_unit<FieldScalar>(a), g2::h3_unit<FieldScalar>(b),
                                   g2::h3_unit<FieldScalar>(c));
  };
  switch (which) {
    case NamedGroup::kZn_large:
      add(g2::plane_a123<FieldScalar>(), "A123");
      add(g2::plane_a145<FieldScalar>(), "A145");
      add(g2::plane_a167<FieldScalar>(), "A167");
      break;
    case NamedGroup::kZ6:
      add(g2::plane_a123<FieldScalar>(), "A123");
      add(g2::plane_a145<FieldScalar>(), "A145");
      add(g2::plane_a167<FieldScalar>(), "A167");
      add(span3(2, 3, 6), "span(e2,e3,e6)");
      add(span3(2, 3, 7), "span(e2,e3,e7)");
      add(span3(4, 5, 6), "span(e4,e5,e6)");
      add(span3(4, 5, 7), "span(e4,e5,e7)");
      break;
    case NamedGroup::kZ5:
      add(g2::plane_a123<FieldScalar>(), "A123");
      out.families.push_back("Q5");
      break;
    case NamedGroup::kZ4:
      add(g2::plane_a145<FieldScalar>(), "A145");
      out.families.push_back("Q4a");
      out.families.push_back("Q4b");
      break;
    case NamedGroup::kZ3:
      add(g2::plane_a167<FieldScalar>(), "A167");
      out.families.push_back("Q3");
      break;
    case NamedGroup::kTet:
      out.families.push_back("P");
      break;
    case NamedGroup::kOct:
      add(g2::plane_a_oct<FieldScalar>(), "A_Oct");
      add(g2::plane_w<FieldScalar>(), "W");
      break;
    case NamedGroup::kIco:
      add(g2::plane_a_ico<FieldScalar>(), "A_Ico");
      break;
    case NamedGroup::kTrivial:
      out.complete = false;  // every 3-plane is invariant
      break;
  }
  return out;
}

template <class K>
int lie_stabilizer_dim(const ThreePlane<K>& plane, double tol) {
  // derivations of the three rotation generators on the 7-dimensional module
  static const auto L = [] {
    std::vector<Mat<FieldScalar>> gens;
    FieldScalar z(0), o(1);
    gens.push_back(Mat<FieldScalar>{{z, z, z}, {z, z, FieldScalar(-1)}, {z, o, z}});
    gens.push_back(Mat<FieldScalar>{{z, z, o}, {z, z, z}, {FieldScalar(-1), z, z}});
    gens.push_back(Mat<FieldScalar>{{z, FieldScalar(-1), z}, {o, z, z}, {z, z, z}});
    std::vector<Mat<FieldScalar>> d;
    for (const auto& g : gens) d.push_back(rep::rho_derivation(g, 3));
    return d;
  }();

  Mat<K> B = plane.basis_matrix();
  Mat<K> gram_inv = linalg::inverse(B.transpose() * B, tol);
  Mat<K> proj = B * gram_inv * B.transpose();  // onto the plane
  // rows: for each basis vector u and each of 7 components of (1-P) D_i u
  Mat<K> sys(21, 3);
  for (int i = 0; i < 3; ++i) {
    Mat<K> Di(7, 7);
    for (int r = 0; r < 7; ++r)
      for (int c = 0; c < 7; ++c) Di(r, c) = scalar::from_field<K>(L[i](r, c));
    for (int bidx = 0; bidx < 3; ++bidx) {
      Vec<K> v = Di * plane.basis()[bidx];
      Vec<K> pv = proj * v;
      for (int r = 0; r < 7; ++r) sys(bidx * 7 + r, i) = v[r] - pv[r];
    }
  }
  return 3 - linalg::rank(sys, tol);
}

template int lie_stabilizer_dim<FieldScalar>(const ThreePlane<FieldScalar>&, double);
template int lie_stabilizer_dim<double>(const ThreePlane<double>&, double);

namespace {

template <class K, class KG>
Mat<K> as_scalar(const Mat<KG>& m) {
  if constexpr (std::is_same_v<K, KG>) {
    return m;
  } else {
    static_assert(std::is_same_v<KG, FieldScalar>);
    Mat<K> out(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
      for (int j = 0; j < m.cols(); ++j) out(i, j) = scalar::from_field<K>(m(i, j));
    return out;
  }
}

}  // namespace

template <class K, class KG>
bool stabilizer_contains(const ThreePlane<K>& plane, const RotationGroup<KG>& G, double tol) {
  for (const auto& g : G.elements()) {
    Mat<K> R = as_scalar<K>(rep::rho(g, 3));
    std::vector<Vec<K>> image;
    for (const auto& b : plane.basis()) image.push_back(R * b);
    if (!linalg::same_span(image, plane.basis(), tol)) return false;
  }
  return true;
}

template bool stabilizer_contains<FieldScalar, FieldScalar>(const ThreePlane<FieldScalar>&,
                                                            const RotationGroup<FieldScalar>&,
                                                            double);
template bool stabilizer_contains<double, double>(const ThreePlane<double>&,
                                                  const RotationGroup<double>&, double);
template bool stabilizer_contains<double, FieldScalar>(const ThreePlane<double>&,
                                                       const RotationGroup<FieldScalar>&, double);

}  // namespace berger::stab
