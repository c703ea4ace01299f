#include "berger/berger_space.hpp"

#include <algorithm>
#include <functional>
#include <cmath>
#include <random>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace berger::space {

namespace {

// dense homogeneous polynomials in five variables, degree <= 3
std::vector<std::array<int, 5>> monomials5(int degree) {
  std::vector<std::array<int, 5>> out;
  std::array<int, 5> e{};
  std::function<void(int, int)> rec = [&](int var, int left) {
    if (var == 4) {
      e[4] = left;
      out.push_back(e);
      return;
    }
    for (int k = left; k >= 0; --k) {
      e[var] = k;
      rec(var + 1, left - k);
    }
  };
  rec(0, degree);
  return out;
}

template <class K>
struct Poly5 {
  int degree = 0;
  Vec<K> c;

  static const std::vector<std::array<int, 5>>& table(int degree) {
    static const std::vector<std::array<int, 5>> t1 = monomials5(1);
    static const std::vector<std::array<int, 5>> t2 = monomials5(2);
    static const std::vector<std::array<int, 5>> t3 = monomials5(3);
    static const std::vector<std::array<int, 5>> t0 = monomials5(0);
    switch (degree) {
      case 0: return t0;
      case 1: return t1;
      case 2: return t2;
      default: return t3;
    }
  }
  static int index(int degree, const std::array<int, 5>& e) {
    const auto& t = table(degree);
    for (size_t i = 0; i < t.size(); ++i)
      if (t[i] == e) return static_cast<int>(i);
    throw std::logic_error("Poly5: bad exponent");
  }
  static Poly5 zero(int degree) {
    return {degree, Vec<K>(table(degree).size(), Traits<K>::zero())};
  }
  friend Poly5 operator*(const Poly5& a, const Poly5& b) {
    Poly5 r = zero(a.degree + b.degree);
    const auto& ta = table(a.degree);
    const auto& tb = table(b.degree);
    for (size_t i = 0; i < ta.size(); ++i) {
      if (Traits<K>::is_zero(a.c[i], 0.0)) continue;
      for (size_t j = 0; j < tb.size(); ++j) {
        if (Traits<K>::is_zero(b.c[j], 0.0)) continue;
        std::array<int, 5> e;
        for (int k = 0; k < 5; ++k) e[k] = ta[i][k] + tb[j][k];
        r.c[index(r.degree, e)] += a.c[i] * b.c[j];
      }
    }
    return r;
  }
};

}  // namespace

template <class K>
const std::vector<std::array<int, 5>>& SymCubic5<K>::monomials() {
  static const std::vector<std::array<int, 5>> t = monomials5(3);
  return t;
}

template <class K>
int SymCubic5<K>::monomial_index(const std::array<int, 5>& e) {
  const auto& t = monomials();
  for (size_t i = 0; i < t.size(); ++i)
    if (t[i] == e) return static_cast<int>(i);
  throw std::logic_error("SymCubic5: bad exponent");
}

template <class K>
SymCubic5<K> SymCubic5<K>::reference() {
  SymCubic5 r{Vec<K>(35, Traits<K>::zero())};
  K s3 = scalar::from_field<K>(FieldScalar::sqrt3());
  K h3 = K(3) / K(2);
  auto set = [&](std::array<int, 5> e, K v) { r.coeffs[monomial_index(e)] = v; };
  set({3, 0, 0, 0, 0}, Traits<K>::one());
  set({1, 2, 0, 0, 0}, h3);
  set({1, 0, 2, 0, 0}, h3);
  set({1, 0, 0, 2, 0}, K(-3));
  set({1, 0, 0, 0, 2}, K(-3));
  set({0, 2, 0, 1, 0}, h3 * s3);
  set({0, 0, 2, 1, 0}, K() - h3 * s3);
  set({0, 1, 1, 0, 1}, K(3) * s3);
  return r;
}

template <class K>
SymCubic5<K> SymCubic5<K>::pushforward(const Mat<K>& g) const {
  // substitute v_i -> sum_j g(j,i) v_j  (rows of g^T)
  std::array<Poly5<K>, 5> lin;
  for (int i = 0; i < 5; ++i) {
    lin[i] = Poly5<K>::zero(1);
    for (int j = 0; j < 5; ++j) {
      std::array<int, 5> e{};
      e[j] = 1;
      lin[i].c[Poly5<K>::index(1, e)] = g(j, i);
    }
  }
  Poly5<K> acc = Poly5<K>::zero(3);
  const auto& tab = monomials();
  for (size_t m = 0; m < tab.size(); ++m) {
    if (Traits<K>::is_zero(coeffs[m], 0.0)) continue;
    Poly5<K> term = Poly5<K>::zero(0);
    term.c[0] = coeffs[m];
    for (int var = 0; var < 5; ++var)
      for (int k = 0; k < tab[m][var]; ++k) term = term * lin[var];
    for (int i = 0; i < 35; ++i) acc.c[i] += term.c[i];
  }
  SymCubic5 out;
  out.coeffs = std::move(acc.c);
  return out;
}

template <class K>
K SymCubic5<K>::evaluate(const Vec<K>& v) const {
  K s = Traits<K>::zero();
  const auto& tab = monomials();
  for (size_t m = 0; m < tab.size(); ++m) {
    if (Traits<K>::is_zero(coeffs[m], 0.0)) continue;
    K t = coeffs[m];
    for (int var = 0; var < 5; ++var)
      for (int k = 0; k < tab[m][var]; ++k) t = t * v[var];
    s += t;
  }
  return s;
}

template struct SymCubic5<FieldScalar>;
template struct SymCubic5<double>;

template <class K>
bool is_special_orthogonal(const Mat<K>& g, double tol) {
  Mat<K> d = g.transpose() * g - Mat<K>::identity(g.rows());
  if (d.max_abs() > (Traits<K>::is_exact ? 0.0 : tol)) return false;
  // determinant via row reduction on a copy (5x5: direct cofactor is fine too)
  Mat<double> gf(g.rows(), g.cols());
  for (int i = 0; i < g.rows(); ++i)
    for (int j = 0; j < g.cols(); ++j) gf(i, j) = Traits<K>::embed(g(i, j));
  // 5x5 determinant by elimination
  double det = 1;
  for (int c = 0; c < gf.cols(); ++c) {
    int p = c;
    for (int r = c + 1; r < gf.rows(); ++r)
      if (std::fabs(gf(r, c)) > std::fabs(gf(p, c))) p = r;
    if (p != c) {
      for (int j = 0; j < gf.cols(); ++j) std::swap(gf(p, j), gf(c, j));
      det = -det;
    }
    det *= gf(c, c);
    if (gf(c, c) == 0) return false;
    for (int r = c + 1; r < gf.rows(); ++r) {
      double f = gf(r, c) / gf(c, c);
      for (int j = c; j < gf.cols(); ++j) gf(r, j) -= f * gf(c, j);
    }
  }
  return det > 0;
}

template bool is_special_orthogonal<FieldScalar>(const Mat<FieldScalar>&, double);
template bool is_special_orthogonal<double>(const Mat<double>&, double);

bool preserves_reference_cubic(const Mat<FieldScalar>& m) {
  return point_from(m).coeffs == SymCubic5<FieldScalar>::reference().coeffs;
}

bool preserves_reference_cubic(const Mat<double>& m, double tol) {
  return point_from(m).max_residual(SymCubic5<double>::reference()) <= tol;
}

std::optional<Mat<double>> reconstruct_rotation(const Mat<double>& m, double tol) {
  // columns of the rotation from the action on the quadric images of the axes
  Mat<double> cols(3, 3);
  for (int a = 0; a < 3; ++a) {
    Vec<double> axis(3, 0.0);
    axis[a] = 1.0;
    Vec<double> w = m * rep::veronese(axis);
    Mat<double> A = rep::matrix_of(w);
    std::vector<double> ev;
    Mat<double> V(3, 3);
    linalg::sym_eigen(A, &ev, &V);
    // expect a double eigenvalue -1/2 and a simple one at +1
    if (std::fabs(ev[2] - 1.0) > 1e-6 || std::fabs(ev[1] + 0.5) > 1e-6) return std::nullopt;
    for (int i = 0; i < 3; ++i) cols(i, a) = V(i, 2);
  }
  // resolve the sign ambiguity of each column
  for (unsigned s = 0; s < 8; ++s) {
    Mat<double> r = cols;
    for (int a = 0; a < 3; ++a)
      if (s & (1u << a))
        for (int i = 0; i < 3; ++i) r(i, a) = -r(i, a);
    double det = r(0, 0) * (r(1, 1) * r(2, 2) - r(1, 2) * r(2, 1)) -
                 r(0, 1) * (r(1, 0) * r(2, 2) - r(1, 2) * r(2, 0)) +
                 r(0, 2) * (r(1, 0) * r(2, 1) - r(1, 1) * r(2, 0));
    if (det < 0) continue;
    if ((r.transpose() * r - Mat<double>::identity(3)).max_abs() > 1e-8) continue;
    if ((rep::rho(r, 2) - m).max_abs() <= tol) return r;
  }
  return std::nullopt;
}

// ---- curves -----------------------------------------------------------------

std::vector<SymCubic5<double>> c_curve(const Mat<double>& frame, int n) {
  if (n < 2) throw std::invalid_argument("c_curve: need at least 2 samples");
  std::vector<SymCubic5<double>> out;
  out.reserve(n);
  for (int k = 0; k < n; ++k) {
    double s = 2 * M_PI * k / n;
    Mat<double> R = liealg::torus_rotation<double>(-2, 1, std::cos(s), std::sin(s));
    out.push_back(point_from<double>(frame * R));
  }
  return out;
}

CurveProperties c_curve_properties(const Mat<double>& frame, int n) {
  CurveProperties props;
  SymCubic5<double> base = point_from(frame);
  auto at = [&](double s) {
    Mat<double> R = liealg::torus_rotation<double>(-2, 1, std::cos(s), std::sin(s));
    return point_from<double>(frame * R);
  };
  props.closure_residual = at(2 * M_PI).max_residual(base);
  for (int k = 1; k < n; ++k)
    props.variation = std::max(props.variation, at(2 * M_PI * k / n).max_residual(base));
  for (int k = 1; k < 16; ++k) {
    double u = 2 * M_PI * k / 16;
    Mat<double> S = liealg::torus_rotation<double>(1, 2, std::cos(u), std::sin(u));
    props.stabilizer_drift =
        std::max(props.stabilizer_drift, point_from<double>(frame * S).max_residual(base));
  }
  // initial tangent, left-translated: coordinates of the circle generator
  auto gen = liealg::subalgebra_basis(liealg::Subalgebra::kS1pq, -2, 1)[0];
  Vec<FieldScalar> coords = liealg::so5_coords(gen);
  props.tangent_omega.resize(7);
  for (int i = 0; i < 7; ++i) props.tangent_omega[i] = coords[3 + i].to_double();
  props.tangent_cone_residual = g2::cone_membership(props.tangent_omega).residual;

  // the full integral torus projects onto the one-parameter curve
  const int grid = 12, dense = 256;
  std::vector<SymCubic5<double>> samples;
  samples.reserve(dense);
  for (int k = 0; k < dense; ++k) samples.push_back(at(2 * M_PI * k / dense));
  for (int a = 0; a < grid; ++a)
    for (int b = 0; b < grid; ++b) {
      double theta = 2 * M_PI * a / grid, phi = 2 * M_PI * b / grid;
      double A = theta + 2 * phi, B = 2 * theta - phi;
      Mat<double> T = Mat<double>::identity(5);
      T(1, 1) = std::cos(A);  T(1, 2) = -std::sin(A);
      T(2, 1) = std::sin(A);  T(2, 2) = std::cos(A);
      T(3, 3) = std::cos(B);  T(3, 4) = -std::sin(B);
      T(4, 3) = std::sin(B);  T(4, 4) = std::cos(B);
      SymCubic5<double> pt = point_from<double>(frame * T);
      int best = 0;
      double bestr = 1e300;
      for (int k = 0; k < dense; ++k) {
        double r = pt.max_residual(samples[k]);
        if (r < bestr) {
          bestr = r;
          best = k;
        }
      }
      // golden-section refinement around the best sample
      double lo = 2 * M_PI * (best - 1) / dense, hi = 2 * M_PI * (best + 1) / dense;
      const double gr = (std::sqrt(5.0) - 1) / 2;
      double c = hi - gr * (hi - lo), d = lo + gr * (hi - lo);
      double fc = pt.max_residual(at(c)), fd = pt.max_residual(at(d));
      for (int it = 0; it < 60; ++it) {
        if (fc < fd) {
          hi = d; d = c; fd = fc;
          c = hi - gr * (hi - lo);
          fc = pt.max_residual(at(c));
        } else {
          lo = c; c = d; fc = fd;
          d = lo + gr * (hi - lo);
          fd = pt.max_residual(at(d));
        }
      }
      props.torus_collapse_defect = std::max(props.torus_collapse_defect, std::min(fc, fd));
    }
  return props;
}

Mat<double> adapted_frame(const Vec<double>& p, const Vec<double>& t1, const Vec<double>& t2) {
  std::vector<Vec<double>> cols{p, t1, t2};
  for (int j = 0; j < 5 && cols.size() < 5; ++j) {
    Vec<double> e(5, 0.0);
    e[j] = 1.0;
    cols.push_back(e);
    auto ortho = linalg::orthogonalize(cols, 1e-8);
    if (ortho.size() < cols.size()) cols.pop_back();
  }
  auto ortho = linalg::orthogonalize(cols, 1e-10);
  if (ortho.size() != 5) throw std::domain_error("adapted_frame: degenerate data");
  Mat<double> g(5, 5);
  for (int j = 0; j < 5; ++j) {
    double n = std::sqrt(linalg::dot(ortho[j], ortho[j]));
    for (int i = 0; i < 5; ++i) g(i, j) = ortho[j][i] / n;
  }
  if (!is_special_orthogonal(g, 1e-8)) {
    for (int i = 0; i < 5; ++i) g(i, 4) = -g(i, 4);  // fix the determinant sign
  }
  return g;
}

GammaFiberCheck gamma_fiber_check(const Vec<double>& p, const Vec<double>& t1,
                                  const Vec<double>& t2, int samples) {
  GammaFiberCheck out;
  out.samples = samples;
  Mat<double> frame = adapted_frame(p, t1, t2);
  for (int k = 0; k < samples; ++k) {
    double s = 2 * M_PI * k / samples;
    Mat<double> g = frame * liealg::torus_rotation<double>(-2, 1, std::cos(s), std::sin(s));
    // the surface g . Sigma contains p iff g^T p is on the reference orbit
    Vec<double> w = g.transpose() * p;
    auto mem = rep::veronese_membership(w, 1e-8);
    out.max_membership_defect =
        std::max(out.max_membership_defect, std::fabs(mem.invariant_value - 1.0));
    // tangent of the surface at p: push the parametrization differential forward
    Mat<double> A = rep::matrix_of(w);
    std::vector<double> ev;
    Mat<double> V(3, 3);
    linalg::sym_eigen(A, &ev, &V);
    Vec<double> u = V.col(2);  // simple eigenvector: the base direction
    std::vector<Vec<double>> tangent;
    const double eps = 1e-6;
    for (int dir = 0; dir < 3; ++dir) {
      Vec<double> t(3, 0.0);
      t[dir] = 1.0;
      double proj = linalg::dot(t, u);
      for (int i = 0; i < 3; ++i) t[i] -= proj * u[i];
      double n = std::sqrt(linalg::dot(t, t));
      if (n < 0.5) continue;  // keep two well-conditioned directions
      for (int i = 0; i < 3; ++i) t[i] /= n;
      Vec<double> up(3), um(3);
      for (int i = 0; i < 3; ++i) {
        up[i] = u[i] + eps * t[i];
        um[i] = u[i] - eps * t[i];
      }
      double np = std::sqrt(linalg::dot(up, up)), nm = std::sqrt(linalg::dot(um, um));
      for (int i = 0; i < 3; ++i) {
        up[i] /= np;
        um[i] /= nm;
      }
      Vec<double> dv(5);
      Vec<double> vp = rep::veronese(up), vm = rep::veronese(um);
      for (int i = 0; i < 5; ++i) dv[i] = (vp[i] - vm[i]) / (2 * eps);
      tangent.push_back(g * dv);
      if (tangent.size() == 2) break;
    }
    if (tangent.size() != 2) throw std::logic_error("gamma_fiber_check: tangent extraction");
    // compare span(tangent) with span(t1, t2) through projectors
    auto proj_of = [](const std::vector<Vec<double>>& basis) {
      Mat<double> B(5, static_cast<int>(basis.size()));
      for (size_t j = 0; j < basis.size(); ++j) B.set_col(static_cast<int>(j), basis[j]);
      return B * linalg::inverse(B.transpose() * B) * B.transpose();
    };
    Mat<double> P1 = proj_of(tangent), P2 = proj_of({t1, t2});
    out.max_tangent_defect = std::max(out.max_tangent_defect, (P1 - P2).max_abs());
  }
  return out;
}

// ---- homogeneous orbits -------------------------------------------------------

Mat<double> expm5(const Mat<double>& x) {
  double norm = x.max_abs();
  int squarings = 0;
  Mat<double> xs = x;
  while (norm > 0.5) {
    xs = 0.5 * xs;
    norm *= 0.5;
    ++squarings;
  }
  Mat<double> term = Mat<double>::identity(5), sum = term;
  for (int k = 1; k <= 16; ++k) {
    term = (1.0 / k) * (term * xs);
    sum = sum + term;
  }
  for (int s = 0; s < squarings; ++s) sum = sum * sum;
  return sum;
}

OrbitTangent orbit_tangent_plane(const std::vector<Mat<FieldScalar>>& subalgebra,
                                 const Mat<FieldScalar>& h) {
  std::vector<Vec<FieldScalar>> omega_parts;
  for (const auto& X : subalgebra) {
    Mat<FieldScalar> ad = h * X * h.transpose();
    Vec<FieldScalar> co = liealg::so5_coords(ad);
    omega_parts.push_back(Vec<FieldScalar>(co.begin() + 3, co.end()));
  }
  auto ortho = linalg::orthogonalize<FieldScalar>(omega_parts);
  OrbitTangent out{ThreePlane<FieldScalar>(g2::h3_unit<FieldScalar>(1), g2::h3_unit<FieldScalar>(2),
                                           g2::h3_unit<FieldScalar>(3)),
                   static_cast<int>(omega_parts.size()),
                   static_cast<int>(omega_parts.size() - ortho.size()), 0.0};
  if (ortho.size() != 3) throw std::domain_error("orbit_tangent_plane: span is not 3-dimensional");
  ThreePlane<FieldScalar> plane(ortho[0], ortho[1], ortho[2]);
  if (plane.calibrated_exact() == -1) plane = plane.orientation_flipped();
  out.plane = plane;

  // finite-difference consistency of the translation convention
  Mat<double> hf(5, 5), hft(5, 5);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) hf(i, j) = h(i, j).to_double();
  hft = hf.transpose();
  const double eps = 1e-5;
  for (const auto& X : subalgebra) {
    Mat<double> Xf(5, 5);
    for (int i = 0; i < 5; ++i)
      for (int j = 0; j < 5; ++j) Xf(i, j) = X(i, j).to_double();
    // curve through the base point
    SymCubic5<double> plus = point_from<double>(expm5(eps * Xf) * hft);
    SymCubic5<double> minus = point_from<double>(expm5((-eps) * Xf) * hft);
    // reference: tangent through the identity coset moved by h^{-1}
    Mat<double> ad = hf * Xf * hf.transpose();
    Vec<double> co = liealg::so5_coords(ad);
    Vec<FieldScalar> zero10(10, FieldScalar(0));
    Vec<double> cz(10, 0.0);
    for (int i = 3; i < 10; ++i) cz[i] = co[i];
    Mat<double> Y = liealg::so5_from_coords(cz);
    Mat<double> Yh = hft * Y;  // d/dt [ h^T exp(t Y) ] at 0, as a frame derivative
    SymCubic5<double> plus2 = point_from<double>(hft * expm5(eps * Y));
    SymCubic5<double> minus2 = point_from<double>(hft * expm5((-eps) * Y));
    (void)Yh;
    double worst = 0;
    for (int i = 0; i < 35; ++i) {
      double a = (plus.coeffs[i] - minus.coeffs[i]) / (2 * eps);
      double b = (plus2.coeffs[i] - minus2.coeffs[i]) / (2 * eps);
      worst = std::max(worst, std::fabs(a - b));
    }
    out.fd_consistency = std::max(out.fd_consistency, worst);
  }
  return out;
}

const std::vector<HomogeneousCase>& homogeneous_catalogue() {
  static const std::vector<HomogeneousCase> table = [] {
    FieldScalar z(0), o(1);
    auto perm = [&](std::initializer_list<int> rows) {
      Mat<FieldScalar> m(5, 5);
      int i = 0;
      for (int j : rows) m(i++, j) = o;
      return m;
    };
    Mat<FieldScalar> h_i1 = perm({2, 3, 4, 0, 1});
    Mat<FieldScalar> h_145 = perm({2, 0, 1, 3, 4});
    Mat<FieldScalar> h_167{{FieldScalar(-1), z, z, z, z},
                           {z, o, z, z, z},
                           {z, z, o, z, z},
                           {z, z, z, FieldScalar(-1), z},
                           {z, z, z, z, o}};
    Mat<FieldScalar> k_oct = perm({0, 4, 3, 1, 2});
    for (int j = 0; j < 5; ++j) k_oct(0, j) = z;
    k_oct(0, 0) = FieldScalar(-1);
    FieldScalar q(1, 4);
    FieldScalar s15q = FieldScalar::sqrt15() * q;
    Mat<FieldScalar> h_ico{{FieldScalar(0) - q, z, z, FieldScalar(0) - s15q, z},
                           {z, o, z, z, z},
                           {z, z, o, z, z},
                           {s15q, z, z, FieldScalar(0) - q, z},
                           {z, z, z, z, o}};
    using S = liealg::Subalgebra;
    using F = HomogeneousCase::Finite;
    std::vector<HomogeneousCase> t;
    t.push_back({HomCase::kCaseI_SO2SO3, "o123a", S::kSo2So3Std, h_i1, 1, F::kNone});
    t.push_back({HomCase::kCaseI_U2, "o123b", S::kU2, Mat<FieldScalar>::identity(5), 1, F::kNone});
    t.push_back({HomCase::k145, "o145", S::kSo2So3Std, h_145, 2, F::kNone});
    t.push_back({HomCase::k167, "o167", S::kU2, h_167, 3, F::kNone});
    t.push_back({HomCase::kIco, "ico", S::kSo3Irr, h_ico, 0, F::kIco});
    t.push_back({HomCase::kOct1, "oct1", S::kSo3Irr, h_167, 0, F::kOct});
    t.push_back({HomCase::kOct2, "oct2", S::kSo3Std, k_oct, 0, F::kOct});
    return t;
  }();
  return table;
}

Mat<FieldScalar> ico_case_frame() {
  for (const auto& c : homogeneous_catalogue())
    if (c.id == HomCase::kIco) return c.frame;
  throw std::logic_error("unreachable");
}

namespace {

// rotation weight of the circle stabilizer on the plane (float path)
double measured_circle_weight(const ThreePlane<FieldScalar>& plane) {
  // stabilizer direction in the rotation algebra
  Mat<double> B(7, 3);
  for (int j = 0; j < 3; ++j) {
    Vec<FieldScalar> b = plane.basis()[j];
    double n = 0;
    for (const auto& c : b) n += c.to_double() * c.to_double();
    n = std::sqrt(n);
    for (int i = 0; i < 7; ++i) B(i, j) = b[i].to_double() / n;
  }
  std::vector<Mat<double>> D;
  {
    FieldScalar z(0), o(1);
    std::vector<Mat<FieldScalar>> gens{
        Mat<FieldScalar>{{z, z, z}, {z, z, FieldScalar(-1)}, {z, o, z}},
        Mat<FieldScalar>{{z, z, o}, {z, z, z}, {FieldScalar(-1), z, z}},
        Mat<FieldScalar>{{z, FieldScalar(-1), z}, {o, z, z}, {z, z, z}}};
    for (const auto& g : gens) {
      Mat<FieldScalar> d = rep::rho_derivation(g, 3);
      Mat<double> df(7, 7);
      for (int i = 0; i < 7; ++i)
        for (int j = 0; j < 7; ++j) df(i, j) = d(i, j).to_double();
      D.push_back(df);
    }
  }
  Mat<double> P = B * B.transpose();
  Mat<double> sys(21, 3);
  for (int i = 0; i < 3; ++i)
    for (int b = 0; b < 3; ++b) {
      Vec<double> v = D[i] * B.col(b);
      Vec<double> pv = P * v;
      for (int r = 0; r < 7; ++r) sys(b * 7 + r, i) = v[r] - pv[r];
    }
  auto null_basis = linalg::kernel(sys, 1e-9);
  if (null_basis.size() != 1) return -1;
  Vec<double> x = null_basis[0];
  double xn = std::sqrt(linalg::dot(x, x));
  for (auto& c : x) c /= xn;
  Mat<double> Dx(7, 7);
  for (int i = 0; i < 3; ++i)
    for (int r = 0; r < 7; ++r)
      for (int cc = 0; cc < 7; ++cc) Dx(r, cc) += x[i] * D[i](r, cc);
  // restricted action on the plane: 3x3, eigenvalues {0, +-i w}
  Mat<double> A = B.transpose() * Dx * B;
  double w2 = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) w2 += A(i, j) * A(i, j);
  return std::sqrt(w2 / 2.0);  // Frobenius norm of a rotation generator pair
}

}  // namespace

HomCaseResult verify_homogeneous_case(const HomogeneousCase& c, int translations, unsigned seed,
                                      double tol) {
  HomCaseResult r;
  r.name = c.name;
  auto basis = liealg::subalgebra_basis(c.group);
  OrbitTangent tangent = orbit_tangent_plane(basis, c.frame);
  r.fd_consistency = tangent.fd_consistency;
  r.base_associative = tangent.plane.calibrated_exact() == 1;
  r.base_value = tangent.plane.calibration_value();
  r.lie_stabilizer_dim = stab::lie_stabilizer_dim(tangent.plane);

  if (c.finite == HomogeneousCase::Finite::kIco) {
    r.stabilizer_verified =
        r.lie_stabilizer_dim == 0 && stab::stabilizer_contains(tangent.plane, stab::ico_group());
  } else if (c.finite == HomogeneousCase::Finite::kOct) {
    r.stabilizer_verified =
        r.lie_stabilizer_dim == 0 && stab::stabilizer_contains(tangent.plane, stab::oct_group());
  } else {
    double w = measured_circle_weight(tangent.plane);
    r.stabilizer_verified =
        r.lie_stabilizer_dim == 1 && std::fabs(w - c.circle_weight) < 1e-6;
  }

  // homogeneity spot-check at translated points
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  Mat<double> hf(5, 5);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) hf(i, j) = c.frame(i, j).to_double();
  std::vector<Mat<double>> basis_f;
  for (const auto& X : basis) {
    Mat<double> Xf(5, 5);
    for (int i = 0; i < 5; ++i)
      for (int j = 0; j < 5; ++j) Xf(i, j) = X(i, j).to_double();
    basis_f.push_back(Xf);
  }
  for (int t = 0; t < translations; ++t) {
    Mat<double> X(5, 5);
    for (const auto& Xf : basis_f) X = X + gauss(rng) * Xf;
    Mat<double> g = expm5(X);
    // tangent at the translated point, moved back to the identity coset
    std::vector<Vec<double>> vecs;
    for (const auto& Xf : basis_f) {
      Mat<double> ad = hf * g.transpose() * Xf * g * hf.transpose();
      Vec<double> co = liealg::so5_coords(ad);
      vecs.push_back(Vec<double>(co.begin() + 3, co.end()));
    }
    auto ortho = linalg::orthogonalize(vecs, 1e-9);
    if (ortho.size() != 3) {
      r.worst_translated_value = 0;
      break;
    }
    ThreePlane<double> p(ortho[0], ortho[1], ortho[2]);
    r.worst_translated_value =
        std::min(r.worst_translated_value, std::fabs(p.calibration_value()));
  }

  r.pass = r.base_associative && r.stabilizer_verified &&
           std::fabs(r.worst_translated_value - 1.0) < tol && r.fd_consistency < 1e-4;
  return r;
}

// ---- surface-pair intersection ------------------------------------------------

std::vector<Vec<double>> dodeca_vertices() {
  double tau = (1 + std::sqrt(5.0)) / 2;
  double s3 = std::sqrt(3.0);
  std::vector<Vec<double>> pts;
  for (int sx : {1, -1})
    for (int sy : {1, -1})
      for (int sz : {1, -1}) pts.push_back({sx / s3, sy / s3, sz / s3});
  for (int sa : {1, -1})
    for (int sb : {1, -1}) {
      double a = sa * tau / s3, b = sb / (tau * s3);
      pts.push_back({0.0, a, b});
      pts.push_back({b, 0.0, a});
      pts.push_back({a, b, 0.0});
    }
  return pts;
}

DodecaIntersection dodeca_intersection(int grid_theta, int grid_phi, double merge_tol,
                                       bool parallel) {
  DodecaIntersection out;
  Mat<FieldScalar> h_exact = ico_case_frame();
  Mat<double> h(5, 5);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) h(i, j) = h_exact(i, j).to_double();

  auto defect = [&](const Vec<double>& u) {
    return 1.0 - rep::upsilon(Vec<double>(h * rep::veronese(u)));
  };

  // refine a seed by projected Newton on the 2-dimensional chart
  auto refine = [&](Vec<double> u) {
    for (int it = 0; it < 60; ++it) {
      // tangent frame at u
      Vec<double> t1(3), t2(3);
      int axis = std::fabs(u[0]) < 0.9 ? 0 : 1;
      Vec<double> e(3, 0.0);
      e[axis] = 1.0;
      double pr = linalg::dot(e, u);
      for (int i = 0; i < 3; ++i) t1[i] = e[i] - pr * u[i];
      double n1 = std::sqrt(linalg::dot(t1, t1));
      for (int i = 0; i < 3; ++i) t1[i] /= n1;
      t2 = {u[1] * t1[2] - u[2] * t1[1], u[2] * t1[0] - u[0] * t1[2],
            u[0] * t1[1] - u[1] * t1[0]};
      const double eps = 1e-6;
      auto at = [&](double a, double b) {
        Vec<double> v(3);
        for (int i = 0; i < 3; ++i) v[i] = u[i] + a * t1[i] + b * t2[i];
        double n = std::sqrt(linalg::dot(v, v));
        for (auto& c : v) c /= n;
        return defect(v);
      };
      double f0 = at(0, 0);
      if (f0 < 1e-24) break;
      double gx = (at(eps, 0) - at(-eps, 0)) / (2 * eps);
      double gy = (at(0, eps) - at(0, -eps)) / (2 * eps);
      double hxx = (at(eps, 0) - 2 * f0 + at(-eps, 0)) / (eps * eps);
      double hyy = (at(0, eps) - 2 * f0 + at(0, -eps)) / (eps * eps);
      double hxy = (at(eps, eps) - at(eps, -eps) - at(-eps, eps) + at(-eps, -eps)) / (4 * eps * eps);
      double det = hxx * hyy - hxy * hxy;
      double da, db;
      if (std::fabs(det) > 1e-12 && hxx > 0) {
        da = -(hyy * gx - hxy * gy) / det;
        db = -(-hxy * gx + hxx * gy) / det;
      } else {
        da = -0.2 * gx;
        db = -0.2 * gy;
      }
      double lim = 0.3;
      double dn = std::sqrt(da * da + db * db);
      if (dn > lim) {
        da *= lim / dn;
        db *= lim / dn;
      }
      for (int i = 0; i < 3; ++i) u[i] += da * t1[i] + db * t2[i];
      double n = std::sqrt(linalg::dot(u, u));
      for (auto& c : u) c /= n;
    }
    return u;
  };

  // grid scan for seeds
  std::vector<Vec<double>> seeds;
  std::vector<std::vector<Vec<double>>> rows(grid_theta);
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (parallel)
#endif
  for (int a = 0; a < grid_theta; ++a) {
    double theta = M_PI * (a + 0.5) / grid_theta;
    for (int b = 0; b < grid_phi; ++b) {
      double phi = 2 * M_PI * b / grid_phi;
      Vec<double> u{std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi),
                    std::cos(theta)};
      if (defect(u) < 0.02) rows[a].push_back(u);
    }
  }
  for (auto& r : rows)
    for (auto& u : r) seeds.push_back(u);

  std::vector<Vec<double>> found;
  for (const auto& s : seeds) {
    Vec<double> u = refine(s);
    if (defect(u) > 1e-18) continue;
    bool dup = false;
    for (const auto& p : found) {
      double dplus = 0, dminus = 0;
      for (int i = 0; i < 3; ++i) {
        dplus += (u[i] - p[i]) * (u[i] - p[i]);
        dminus += (u[i] + p[i]) * (u[i] + p[i]);
      }
      if (std::min(std::sqrt(dplus), std::sqrt(dminus)) < merge_tol) {
        dup = true;
        break;
      }
    }
    if (!dup) found.push_back(u);
  }
  // report both points of each antipodal pair
  out.antipodal_classes = static_cast<int>(found.size());
  for (const auto& u : found) {
    out.points.push_back(u);
    out.points.push_back({-u[0], -u[1], -u[2]});
  }
  for (const auto& u : out.points)
    out.max_membership_residual = std::max(out.max_membership_residual, defect(u));

  // single orbit under the icosahedral-type symmetry group of the configuration
  if (!out.points.empty()) {
    auto G = stab::dodeca_symmetry_group();
    auto nearest = [&](const Vec<double>& v) {
      double best = 1e300;
      for (const auto& p : out.points) {
        double d = 0;
        for (int i = 0; i < 3; ++i) d += (v[i] - p[i]) * (v[i] - p[i]);
        best = std::min(best, std::sqrt(d));
      }
      return best;
    };
    std::vector<Vec<double>> orbit;
    for (const auto& g : G.elements()) {
      Mat<double> gf(3, 3);
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) gf(i, j) = g(i, j).to_double();
      Vec<double> v = gf * out.points[0];
      orbit.push_back(v);
    }
    double worst = 0;
    for (const auto& v : orbit) worst = std::max(worst, nearest(v));
    // orbit covers every found point
    double cover = 0;
    for (const auto& p : out.points) {
      double best = 1e300;
      for (const auto& v : orbit) {
        double d = 0;
        for (int i = 0; i < 3; ++i) d += (v[i] - p[i]) * (v[i] - p[i]);
        best = std::min(best, std::sqrt(d));
      }
      cover = std::max(cover, best);
    }
    out.single_orbit = worst < 1e-8 && cover < 1e-8;
  }

  // distance to the closed-form vertex list
  auto verts = dodeca_vertices();
  double worst = 0;
  for (const auto& p : out.points) {
    double best = 1e300;
    for (const auto& v : verts) {
      double d = 0;
      for (int i = 0; i < 3; ++i) d += (v[i] - p[i]) * (v[i] - p[i]);
      best = std::min(best, std::sqrt(d));
    }
    worst = std::max(worst, best);
  }
  for (const auto& v : verts) {
    double best = 1e300;
    for (const auto& p : out.points) {
      double d = 0;
      for (int i = 0; i < 3; ++i) d += (v[i] - p[i]) * (v[i] - p[i]);
      best = std::min(best, std::sqrt(d));
    }
    worst = std::max(worst, best);
  }
  out.displayed_match_residual = out.points.empty() ? 1e300 : worst;
  return out;
}

// ---- group intersections --------------------------------------------------------

int group_intersection_order(const stab::RotationGroup<FieldScalar>& candidates,
                             const Mat<FieldScalar>& h, IntersectionTarget target) {
  int count = 0;
  for (const auto& g : candidates.elements()) {
    Mat<FieldScalar> M = h * rep::rho(g, 2) * h.transpose();
    bool in_target = false;
    if (target == IntersectionTarget::kRho2SO3) {
      in_target = preserves_reference_cubic(M);
      // cross-check with the float reconstruction of the rotation
      if (in_target) {
        Mat<double> Mf(5, 5);
        for (int i = 0; i < 5; ++i)
          for (int j = 0; j < 5; ++j) Mf(i, j) = M(i, j).to_double();
        auto rec = reconstruct_rotation(Mf, 1e-9);
        if (!rec) throw std::logic_error("group_intersection_order: reconstruction disagrees");
      }
    } else {
      in_target = true;
      for (int i = 0; i < 2 && in_target; ++i)
        for (int j = 0; j < 5 && in_target; ++j) {
          FieldScalar want = (i == j) ? FieldScalar(1) : FieldScalar(0);
          if (M(i, j) != want || M(j, i) != want) in_target = false;
        }
    }
    if (in_target) ++count;
  }
  return count;
}

int group_intersection_order_ico() {
  return group_intersection_order(stab::dodeca_symmetry_group(), ico_case_frame(),
                                  IntersectionTarget::kRho2SO3);
}

int group_intersection_order_oct() {
  Mat<FieldScalar> k;
  for (const auto& c : homogeneous_catalogue())
    if (c.id == HomCase::kOct2) k = c.frame;
  return group_intersection_order(stab::oct_group(), k, IntersectionTarget::kSO3StdBlock);
}

}  // namespace berger::space
