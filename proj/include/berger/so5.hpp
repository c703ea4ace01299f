#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

#include "berger/coframe.hpp"
#include "berger/form.hpp"
#include "berger/linalg.hpp"
#include "berger/scalar.hpp"

namespace berger::liealg {

using linalg::Mat;
using linalg::Vec;
using scalar::FieldScalar;

// Global coframe order (gamma_1, gamma_2, gamma_3, omega_1, ..., omega_7).
inline constexpr int kDim = 10;
inline constexpr int gamma_index(int i) { return i - 1; }      // i in 1..3
inline constexpr int omega_index(int i) { return 2 + i; }      // i in 1..7

inline const std::vector<std::string>& coframe_names() {
  static const std::vector<std::string> n{"g1", "g2", "g3", "w1", "w2",
                                          "w3", "w4", "w5", "w6", "w7"};
  return n;
}

// so(3) block of the adapted parametrization of so(5).
template <class K>
Mat<K> gamma_matrix(const K& g1, const K& g2, const K& g3) {
  K z = scalar::Traits<K>::zero();
  K s3 = scalar::from_field<K>(FieldScalar::sqrt3());
  K two(2);
  return Mat<K>{{z, K() - s3 * g3, s3 * g2, z, z},
                {s3 * g3, z, K() - g1, K() - g3, g2},
                {K() - s3 * g2, g1, z, K() - g2, K() - g3},
                {z, g3, g2, z, K() - two * g1},
                {z, K() - g2, g3, two * g1, z}};
}

// H3 block of the adapted parametrization of so(5).
template <class K>
Mat<K> omega_matrix(const std::array<K, 7>& w) {
  using scalar::from_field;
  K z = scalar::Traits<K>::zero();
  K s2 = from_field<K>(FieldScalar::sqrt2());
  K s3 = from_field<K>(FieldScalar::sqrt3());
  K s5 = from_field<K>(FieldScalar::sqrt5());
  K s10 = from_field<K>(FieldScalar::sqrt10());
  K f = s2 / K(3);
  const K &w1 = w[0], &w2 = w[1], &w3 = w[2], &w4 = w[3], &w5 = w[4], &w6 = w[5], &w7 = w[6];
  Mat<K> m{{z, K() - K(2) * w2, K(2) * w3, K() - s10 * w4, s10 * w5},
           {K(2) * w2, z, K() - K(2) * s2 * w1, s3 * w2 - s5 * w6, K() - s3 * w3 + s5 * w7},
           {K() - K(2) * w3, K(2) * s2 * w1, z, s3 * w3 + s5 * w7, s3 * w2 + s5 * w6},
           {s10 * w4, K() - s3 * w2 + s5 * w6, K() - s3 * w3 - s5 * w7, z, s2 * w1},
           {K() - s10 * w5, s3 * w3 - s5 * w7, K() - s3 * w2 - s5 * w6, K() - s2 * w1, z}};
  return f * m;
}

template <class K>
Mat<K> so5_from_coords(const Vec<K>& c) {
  std::array<K, 7> w;
  for (int i = 0; i < 7; ++i) w[i] = c[3 + i];
  return gamma_matrix(c[0], c[1], c[2]) + omega_matrix(w);
}

namespace detail {
// 10x10 map from coordinates to the strictly-upper entries (row-major pairs),
// inverted exactly once.
inline const Mat<FieldScalar>& coord_inverse() {
  static const Mat<FieldScalar> inv = [] {
    Mat<FieldScalar> A(10, 10);
    for (int k = 0; k < 10; ++k) {
      Vec<FieldScalar> c(10, FieldScalar(0));
      c[k] = FieldScalar(1);
      Mat<FieldScalar> m = so5_from_coords(c);
      int row = 0;
      for (int i = 0; i < 5; ++i)
        for (int j = i + 1; j < 5; ++j) A(row++, k) = m(i, j);
    }
    return linalg::inverse(A);
  }();
  return inv;
}
}  // namespace detail

template <class K>
Vec<K> so5_coords(const Mat<K>& m) {
  const Mat<FieldScalar>& inv = detail::coord_inverse();
  Vec<K> upper(10);
  int row = 0;
  for (int i = 0; i < 5; ++i)
    for (int j = i + 1; j < 5; ++j) upper[row++] = m(i, j);
  Vec<K> c(10, scalar::Traits<K>::zero());
  for (int i = 0; i < 10; ++i)
    for (int j = 0; j < 10; ++j) {
      if (inv(i, j).is_zero()) continue;
      c[i] += scalar::from_field<K>(inv(i, j)) * upper[j];
    }
  return c;
}

inline std::vector<Mat<FieldScalar>> so5_basis() {
  std::vector<Mat<FieldScalar>> b;
  for (int k = 0; k < 10; ++k) {
    Vec<FieldScalar> c(10, FieldScalar(0));
    c[k] = FieldScalar(1);
    b.push_back(so5_from_coords(c));
  }
  return b;
}

inline const StructureConstants& so5_structure() {
  static const StructureConstants sc = StructureConstants::from_basis(
      so5_basis(), [](const Mat<FieldScalar>& m) { return so5_coords(m); });
  return sc;
}

template <class K>
const CoframeCalculus<K>& so5_calculus() {
  static const CoframeCalculus<K> calc(so5_structure());
  return calc;
}

// The reference right-hand sides of the coframe structure equations; index k
// gives the expected d(e^k) in the fixed coframe order.
template <class K>
const std::vector<Form<K>>& berger_structure_expected() {
  static const std::vector<Form<K>> table = [] {
    using F = Form<FieldScalar>;
    using scalar::Rational;
    auto fs = [](long n, long d) { return FieldScalar(n, d); };
    FieldScalar s6 = FieldScalar::sqrt6(), s10 = FieldScalar::sqrt10();
    auto g = [](int i) { return F::basis_1form(gamma_index(i)); };
    auto o = [](int i) { return F::basis_1form(omega_index(i)); };
    auto w2 = [&](int i, int j) { return wedge(o(i), o(j)); };
    std::vector<F> t(10);
    t[0] = -wedge(g(2), g(3)) + fs(4, 9) * w2(2, 3) + fs(8, 9) * w2(4, 5) + fs(12, 9) * w2(6, 7);
    t[1] = -wedge(g(3), g(1)) + (fs(2, 9) * (FieldScalar(2) * s6)) * w2(1, 2) -
           (fs(2, 9) * s10) * (w2(2, 5) - w2(3, 4)) - (fs(2, 9) * s6) * (w2(4, 7) - w2(5, 6));
    t[2] = -wedge(g(1), g(2)) - (fs(2, 9) * (FieldScalar(2) * s6)) * w2(1, 3) -
           (fs(2, 9) * s10) * (w2(2, 4) + w2(3, 5)) - (fs(2, 9) * s6) * (w2(4, 6) + w2(5, 7));
    // linear (connection) part: d omega_i = -sum_j M[i][j] gamma_{G[i][j]} ^ omega_j + (2/3) Q_i
    FieldScalar h10 = s10 * fs(1, 2), h6 = s6 * fs(1, 2);
    struct Ent { int j; FieldScalar c; int g; };
    std::vector<std::vector<Ent>> M(7);
    M[0] = {{2, s6, 2}, {3, FieldScalar(0) - s6, 3}};
    M[1] = {{1, FieldScalar(0) - s6, 2}, {3, FieldScalar(1), 1}, {4, FieldScalar(0) - h10, 3}, {5, FieldScalar(0) - h10, 2}};
    M[2] = {{1, s6, 3}, {2, FieldScalar(-1), 1}, {4, h10, 2}, {5, FieldScalar(0) - h10, 3}};
    M[3] = {{2, h10, 3}, {3, FieldScalar(0) - h10, 2}, {5, FieldScalar(2), 1}, {6, FieldScalar(0) - h6, 3}, {7, FieldScalar(0) - h6, 2}};
    M[4] = {{2, h10, 2}, {3, h10, 3}, {4, FieldScalar(-2), 1}, {6, h6, 2}, {7, FieldScalar(0) - h6, 3}};
    M[5] = {{4, h6, 3}, {5, FieldScalar(0) - h6, 2}, {7, FieldScalar(3), 1}};
    M[6] = {{4, h6, 2}, {5, h6, 3}, {6, FieldScalar(-3), 1}};
    std::vector<F> Q(7);
    Q[0] = -w2(2, 3) - w2(4, 5) + w2(6, 7);
    Q[1] = w2(1, 3) - w2(4, 6) - w2(5, 7);
    Q[2] = -w2(1, 2) + w2(5, 6) - w2(4, 7);
    Q[3] = w2(1, 5) + w2(2, 6) + w2(3, 7);
    Q[4] = -w2(1, 4) - w2(3, 6) + w2(2, 7);
    Q[5] = -w2(1, 7) - w2(2, 4) + w2(3, 5);
    Q[6] = w2(1, 6) - w2(2, 5) - w2(3, 4);
    for (int i = 0; i < 7; ++i) {
      F rhs = fs(2, 3) * Q[i];
      for (const auto& e : M[i]) rhs -= e.c * wedge(g(e.g), o(e.j));
      t[3 + i] = rhs;
    }
    std::vector<Form<K>> out;
    out.reserve(10);
    for (const auto& f : t) out.push_back(f.template convert<K>());
    return out;
  }();
  return table;
}

struct RowResidual {
  int coframe_index = -1;
  double residual = 0.0;
  bool pass = false;
};

// d of each coframe 1-form against the reference table.
template <class K>
std::vector<RowResidual> check_berger_structure(double tol) {
  const auto& calc = so5_calculus<K>();
  const auto& expected = berger_structure_expected<K>();
  std::vector<RowResidual> rows;
  for (int k = 0; k < kDim; ++k) {
    Form<K> d = calc.d(Form<K>::basis_1form(k));
    double res = d.max_residual(expected[k]);
    rows.push_back({k, res, (d - expected[k]).is_zero_within(scalar::Traits<K>::is_exact ? 0.0 : tol)});
  }
  return rows;
}

// d^2 on all coframe 2-form monomials; returns the max residual.
template <class K>
double d_squared_residual() {
  const auto& calc = so5_calculus<K>();
  double worst = 0;
  for (int i = 0; i < kDim; ++i)
    for (int j = i + 1; j < kDim; ++j) {
      Form<K> f = Form<K>::monomial(mono_of({i, j}), scalar::Traits<K>::one());
      worst = std::max(worst, calc.d(calc.d(f)).max_abs());
    }
  return worst;
}

enum class Subalgebra {
  kSo3Irr,
  kSo4,
  kU2,
  kSu2,
  kSo3Std,
  kSo2So3Std,
  kT2,
  kS1pq,
};

inline Subalgebra subalgebra_from_name(const std::string& name) {
  if (name == "so3_irr") return Subalgebra::kSo3Irr;
  if (name == "so4") return Subalgebra::kSo4;
  if (name == "u2") return Subalgebra::kU2;
  if (name == "su2") return Subalgebra::kSu2;
  if (name == "so3_std") return Subalgebra::kSo3Std;
  if (name == "so2xso3_std") return Subalgebra::kSo2So3Std;
  if (name == "t2") return Subalgebra::kT2;
  if (name == "s1") return Subalgebra::kS1pq;
  throw std::invalid_argument("unknown subalgebra: " + name);
}

namespace detail {
inline Mat<FieldScalar> skew_unit(int i, int j) {
  Mat<FieldScalar> m(5, 5);
  m(i, j) = FieldScalar(1);
  m(j, i) = FieldScalar(-1);
  return m;
}
}  // namespace detail

// Bases of the distinguished subalgebras, in the conventions fixed by the
// adapted coordinates: so(4) stabilizes e1; u(2) preserves the Kaehler 2-form
// on span(e2..e5); so(3)_std acts on span(e3,e4,e5); the torus matches the
// circle-weight convention used for the curve families.
inline std::vector<Mat<FieldScalar>> subalgebra_basis(Subalgebra s, int p = 0, int q = 0) {
  using detail::skew_unit;
  switch (s) {
    case Subalgebra::kSo3Irr: {
      std::vector<Mat<FieldScalar>> b;
      for (int i = 1; i <= 3; ++i) {
        FieldScalar g1(i == 1 ? 1 : 0), g2(i == 2 ? 1 : 0), g3(i == 3 ? 1 : 0);
        b.push_back(gamma_matrix(g1, g2, g3));
      }
      return b;
    }
    case Subalgebra::kSo4: {
      std::vector<Mat<FieldScalar>> b;
      for (int i = 1; i < 5; ++i)
        for (int j = i + 1; j < 5; ++j) b.push_back(skew_unit(j, i));
      return b;
    }
    case Subalgebra::kU2:
      return {skew_unit(2, 1) + skew_unit(4, 3), skew_unit(2, 1) - skew_unit(4, 3),
              skew_unit(3, 1) + skew_unit(4, 2), skew_unit(4, 1) - skew_unit(3, 2)};
    case Subalgebra::kSu2:
      return {skew_unit(2, 1) - skew_unit(4, 3), skew_unit(3, 1) + skew_unit(4, 2),
              skew_unit(4, 1) - skew_unit(3, 2)};
    case Subalgebra::kSo3Std:
      return {skew_unit(3, 2), skew_unit(4, 2), skew_unit(4, 3)};
    case Subalgebra::kSo2So3Std:
      return {skew_unit(1, 0), skew_unit(3, 2), skew_unit(4, 2), skew_unit(4, 3)};
    case Subalgebra::kT2:
      return {FieldScalar(-1) * skew_unit(2, 1), FieldScalar(-1) * skew_unit(4, 3)};
    case Subalgebra::kS1pq: {
      if (p == 0 && q == 0) throw std::invalid_argument("s1(p,q): (0,0) not allowed");
      Mat<FieldScalar> g =
          FieldScalar(-p) * skew_unit(2, 1) + FieldScalar(-q) * skew_unit(4, 3);
      return {g};
    }
  }
  throw std::logic_error("unreachable");
}

// Bracket closure defect of a subalgebra basis (0 means closed).
inline double subalgebra_closure_residual(const std::vector<Mat<FieldScalar>>& basis) {
  int n = static_cast<int>(basis.size());
  int dim = basis[0].rows();
  // coordinates: stack strictly-upper entries
  auto flat = [&](const Mat<FieldScalar>& m) {
    Vec<FieldScalar> v;
    for (int i = 0; i < dim; ++i)
      for (int j = i + 1; j < dim; ++j) v.push_back(m(i, j));
    return v;
  };
  int cols = static_cast<int>(flat(basis[0]).size());
  double worst = 0;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      Mat<FieldScalar> br = basis[a] * basis[b] - basis[b] * basis[a];
      Mat<FieldScalar> sys(cols, n + 1);
      for (int k = 0; k < n; ++k) {
        auto col = flat(basis[k]);
        for (int r = 0; r < cols; ++r) sys(r, k) = col[r];
      }
      auto rhs = flat(br);
      for (int r = 0; r < cols; ++r) sys(r, n) = rhs[r];
      // residual of the least-squares-free exact solve: closed iff consistent
      Mat<FieldScalar> sys_only(cols, n);
      for (int r = 0; r < cols; ++r)
        for (int k = 0; k < n; ++k) sys_only(r, k) = sys(r, k);
      int r1 = linalg::rank(sys_only);
      int r2 = linalg::rank(sys);
      if (r1 != r2) worst = std::max(worst, 1.0);
    }
  return worst;
}

// One-parameter rotation subgroup of the maximal torus: angle theta on the
// (e2,e3) pair with weight p and on (e4,e5) with weight q.
template <class K>
Mat<K> torus_rotation(int p, int q, const K& c_theta, const K& s_theta) {
  // weight w acts with cos(w theta), sin(w theta); build by repeated angle sums
  auto cs_pow = [&](int w, K* cw, K* sw) {
    K c = scalar::Traits<K>::one(), s = scalar::Traits<K>::zero();
    int n = w < 0 ? -w : w;
    for (int k = 0; k < n; ++k) {
      K c2 = c * c_theta - s * s_theta;
      K s2 = s * c_theta + c * s_theta;
      c = c2;
      s = s2;
    }
    if (w < 0) s = K() - s;
    *cw = c;
    *sw = s;
  };
  K cp, sp, cq, sq;
  cs_pow(p, &cp, &sp);
  cs_pow(q, &cq, &sq);
  Mat<K> m = Mat<K>::identity(5);
  // e^{iw theta}(e2+ie3): e2 -> cos(w)e2 - sin(w)e3, e3 -> sin(w)e2 + cos(w)e3
  m(1, 1) = cp;  m(1, 2) = sp;
  m(2, 1) = K() - sp;  m(2, 2) = cp;
  m(3, 3) = cq;  m(3, 4) = sq;
  m(4, 3) = K() - sq;  m(4, 4) = cq;
  return m;
}

}  // namespace berger::liealg
