#pragma once

#include <array>
#include <stdexcept>
#include <vector>

#include "berger/linalg.hpp"
#include "berger/scalar.hpp"
#include "berger/so5.hpp"

namespace berger::rep {

using linalg::Mat;
using linalg::Vec;
using scalar::FieldScalar;
using scalar::Traits;

// Homogeneous trivariate polynomial of degree n, dense over the monomial list
// x^a y^b z^c (a descending, then b descending).
template <class K>
struct HomPoly {
  int degree = 0;
  Vec<K> coeffs;  // size (n+1)(n+2)/2

  static int monomial_count(int n) { return (n + 1) * (n + 2) / 2; }
  static std::vector<std::array<int, 3>> monomials(int n) {
    std::vector<std::array<int, 3>> m;
    for (int a = n; a >= 0; --a)
      for (int b = n - a; b >= 0; --b) m.push_back({a, b, n - a - b});
    return m;
  }
  static int monomial_index(int n, int a, int b) {
    // position of (a,b,c) in the ordering above
    int idx = 0;
    for (int aa = n; aa > a; --aa) idx += n - aa + 1;
    return idx + (n - a - b);
  }

  static HomPoly zero(int n) { return {n, Vec<K>(monomial_count(n), Traits<K>::zero())}; }

  friend HomPoly operator+(const HomPoly& p, const HomPoly& q) {
    HomPoly r = p;
    for (size_t i = 0; i < r.coeffs.size(); ++i) r.coeffs[i] += q.coeffs[i];
    return r;
  }
  friend HomPoly operator-(const HomPoly& p, const HomPoly& q) {
    HomPoly r = p;
    for (size_t i = 0; i < r.coeffs.size(); ++i) r.coeffs[i] -= q.coeffs[i];
    return r;
  }
  friend HomPoly operator*(const K& s, const HomPoly& p) {
    HomPoly r = p;
    for (auto& c : r.coeffs) c = s * c;
    return r;
  }
  friend HomPoly operator*(const HomPoly& p, const HomPoly& q) {
    HomPoly r = zero(p.degree + q.degree);
    auto pm = monomials(p.degree), qm = monomials(q.degree);
    for (size_t i = 0; i < pm.size(); ++i) {
      if (Traits<K>::is_zero(p.coeffs[i], 0.0)) continue;
      for (size_t j = 0; j < qm.size(); ++j) {
        if (Traits<K>::is_zero(q.coeffs[j], 0.0)) continue;
        int a = pm[i][0] + qm[j][0], b = pm[i][1] + qm[j][1];
        r.coeffs[monomial_index(r.degree, a, b)] += p.coeffs[i] * q.coeffs[j];
      }
    }
    return r;
  }

  // substitute (x,y,z) -> rows of L applied to (x,y,z)
  HomPoly substitute_linear(const Mat<K>& L) const {
    HomPoly lin[3];
    for (int v = 0; v < 3; ++v) {
      lin[v] = zero(1);
      for (int j = 0; j < 3; ++j)
        lin[v].coeffs[monomial_index(1, j == 0 ? 1 : 0, j == 1 ? 1 : 0)] = L(v, j);
    }
    HomPoly out = zero(degree);
    auto ms = monomials(degree);
    for (size_t i = 0; i < ms.size(); ++i) {
      if (Traits<K>::is_zero(coeffs[i], 0.0)) continue;
      HomPoly term = zero(0);
      term.coeffs[0] = coeffs[i];
      for (int v = 0; v < 3; ++v)
        for (int k = 0; k < ms[i][v]; ++k) term = term * lin[v];
      out = out + term;
    }
    return out;
  }

  K evaluate(const K& x, const K& y, const K& z) const {
    K s = Traits<K>::zero();
    auto ms = monomials(degree);
    for (size_t i = 0; i < ms.size(); ++i) {
      if (Traits<K>::is_zero(coeffs[i], 0.0)) continue;
      K t = coeffs[i];
      for (int k = 0; k < ms[i][0]; ++k) t = t * x;
      for (int k = 0; k < ms[i][1]; ++k) t = t * y;
      for (int k = 0; k < ms[i][2]; ++k) t = t * z;
      s += t;
    }
    return s;
  }

  HomPoly laplacian() const {
    if (degree < 2) return zero(0);
    HomPoly r = zero(degree - 2);
    auto ms = monomials(degree);
    for (size_t i = 0; i < ms.size(); ++i) {
      if (Traits<K>::is_zero(coeffs[i], 0.0)) continue;
      int a = ms[i][0], b = ms[i][1], c = ms[i][2];
      if (a >= 2)
        r.coeffs[monomial_index(degree - 2, a - 2, b)] += K(a) * K(a - 1) * coeffs[i];
      if (b >= 2)
        r.coeffs[monomial_index(degree - 2, a, b - 2)] += K(b) * K(b - 1) * coeffs[i];
      if (c >= 2) r.coeffs[monomial_index(degree - 2, a, b)] += K(c) * K(c - 1) * coeffs[i];
    }
    return r;
  }
};

namespace detail {

template <class K>
HomPoly<K> from_field_poly(const HomPoly<FieldScalar>& p) {
  HomPoly<K> r = HomPoly<K>::zero(p.degree);
  for (size_t i = 0; i < p.coeffs.size(); ++i) r.coeffs[i] = scalar::from_field<K>(p.coeffs[i]);
  return r;
}

inline HomPoly<FieldScalar> make_poly(
    int n, std::initializer_list<std::pair<std::array<int, 3>, FieldScalar>> terms) {
  auto p = HomPoly<FieldScalar>::zero(n);
  for (const auto& [m, c] : terms)
    p.coeffs[HomPoly<FieldScalar>::monomial_index(n, m[0], m[1])] = c;
  return p;
}

}  // namespace detail

// The harmonic quadratic basis used for the 5-dimensional module.
inline const std::vector<HomPoly<FieldScalar>>& h2_basis() {
  static const std::vector<HomPoly<FieldScalar>> b = [] {
    using detail::make_poly;
    FieldScalar s3 = FieldScalar::sqrt3();
    FieldScalar h(1, 2);
    return std::vector<HomPoly<FieldScalar>>{
        make_poly(2, {{{2, 0, 0}, FieldScalar(1)}, {{0, 2, 0}, FieldScalar(0) - h}, {{0, 0, 2}, FieldScalar(0) - h}}),
        make_poly(2, {{{1, 1, 0}, s3}}),
        make_poly(2, {{{1, 0, 1}, s3}}),
        make_poly(2, {{{0, 2, 0}, s3 * h}, {{0, 0, 2}, FieldScalar(0) - s3 * h}}),
        make_poly(2, {{{0, 1, 1}, s3}})};
  }();
  return b;
}

// The harmonic cubic basis for the 7-dimensional module.
inline const std::vector<HomPoly<FieldScalar>>& h3_basis() {
  static const std::vector<HomPoly<FieldScalar>> b = [] {
    using detail::make_poly;
    FieldScalar s6 = FieldScalar::sqrt6(), s10 = FieldScalar::sqrt10(), s15 = FieldScalar::sqrt15();
    auto fs = [](long n, long d) { return FieldScalar(n, d); };
    return std::vector<HomPoly<FieldScalar>>{
        make_poly(3, {{{3, 0, 0}, fs(2, 5)}, {{1, 2, 0}, fs(-3, 5)}, {{1, 0, 2}, fs(-3, 5)}}),
        make_poly(3, {{{2, 0, 1}, s6 * fs(4, 10)}, {{0, 2, 1}, FieldScalar(0) - s6 * fs(1, 10)}, {{0, 0, 3}, FieldScalar(0) - s6 * fs(1, 10)}}),
        make_poly(3, {{{2, 1, 0}, s6 * fs(4, 10)}, {{0, 3, 0}, FieldScalar(0) - s6 * fs(1, 10)}, {{0, 1, 2}, FieldScalar(0) - s6 * fs(1, 10)}}),
        make_poly(3, {{{1, 1, 1}, s15 * fs(2, 5)}}),
        make_poly(3, {{{1, 2, 0}, s15 * fs(1, 5)}, {{1, 0, 2}, FieldScalar(0) - s15 * fs(1, 5)}}),
        make_poly(3, {{{0, 2, 1}, s10 * fs(3, 10)}, {{0, 0, 3}, FieldScalar(0) - s10 * fs(1, 10)}}),
        make_poly(3, {{{0, 3, 0}, s10 * fs(1, 10)}, {{0, 1, 2}, FieldScalar(0) - s10 * fs(3, 10)}})};
  }();
  return b;
}

namespace detail {
// Least-squares-free exact projection: solve B c = coeffs for the basis
// coordinates of a polynomial known to lie in the span.
template <class K>
Vec<K> coords_in_basis(const std::vector<HomPoly<FieldScalar>>& basis_f,
                       const HomPoly<K>& p, double tol = 1e-12) {
  int nmono = static_cast<int>(p.coeffs.size());
  int dim = static_cast<int>(basis_f.size());
  Mat<K> B(nmono, dim);
  for (int j = 0; j < dim; ++j)
    for (int i = 0; i < nmono; ++i) B(i, j) = scalar::from_field<K>(basis_f[j].coeffs[i]);
  // normal equations stay exact for FieldScalar and are well-conditioned here
  Mat<K> Bt = B.transpose();
  return linalg::solve(Bt * B, Bt * p.coeffs, tol);
}
}  // namespace detail

// Matrix of the substitution action p |-> p(g^{-1} x) on the degree-n harmonic
// basis (n = 1 uses the coordinate basis (x,y,z)).
template <class K>
Mat<K> rho(const Mat<K>& g, int n, double tol = 1e-9) {
  // orthogonality guard
  Mat<K> gtg = g.transpose() * g;
  Mat<K> id = Mat<K>::identity(3);
  double defect = (gtg - id).max_abs();
  if (defect > (Traits<K>::is_exact ? 0.0 : tol))
    throw std::domain_error("rho: input is not orthogonal");
  if (n == 1) return g;
  const auto& basis = (n == 2) ? h2_basis() : h3_basis();
  if (n != 2 && n != 3) throw std::invalid_argument("rho: n must be 1, 2, or 3");
  int dim = static_cast<int>(basis.size());
  Mat<K> out(dim, dim);
  Mat<K> gi = g.transpose();
  for (int j = 0; j < dim; ++j) {
    HomPoly<K> moved = detail::from_field_poly<K>(basis[j]).substitute_linear(gi);
    Vec<K> c = detail::coords_in_basis<K>(basis, moved);
    out.set_col(j, c);
  }
  return out;
}

// Derivation action of an so(3) element (3x3 antisymmetric) on the degree-n
// harmonic basis: the vector field -(Xv) . grad applied to polynomials.
template <class K>
Mat<K> rho_derivation(const Mat<K>& X, int n) {
  const auto& basis = (n == 2) ? h2_basis() : h3_basis();
  if (n != 2 && n != 3) throw std::invalid_argument("rho_derivation: n must be 2 or 3");
  int dim = static_cast<int>(basis.size());
  Mat<K> out(dim, dim);
  for (int j = 0; j < dim; ++j) {
    HomPoly<K> p = detail::from_field_poly<K>(basis[j]);
    // q = sum_v (-(X x)_v) dp/dv, assembled monomial-wise
    HomPoly<K> q = HomPoly<K>::zero(n);
    auto ms = HomPoly<K>::monomials(n);
    for (size_t i = 0; i < ms.size(); ++i) {
      if (Traits<K>::is_zero(p.coeffs[i], 0.0)) continue;
      int e[3] = {ms[i][0], ms[i][1], ms[i][2]};
      // -(X x) . grad p: differentiate in x_v, multiply by x_u, weight -X(v,u)
      for (int v = 0; v < 3; ++v) {
        if (e[v] == 0) continue;
        for (int u = 0; u < 3; ++u) {
          if (Traits<K>::is_zero(X(v, u), 0.0)) continue;
          int f[3] = {e[0], e[1], e[2]};
          --f[v];
          ++f[u];
          K c = K() - X(v, u) * K(e[v]) * p.coeffs[i];
          q.coeffs[HomPoly<K>::monomial_index(n, f[0], f[1])] += c;
        }
      }
    }
    out.set_col(j, detail::coords_in_basis<K>(basis, q));
  }
  return out;
}

// Differential of the 5-dimensional action expressed in the adapted so(5)
// coordinates; lands in the gamma block.
template <class K>
Mat<K> lambda_so3(const Mat<K>& X) {
  // standard generators L1 = (y->z), L2 = (z->x), L3 = (x->y)
  K g1 = X(2, 1), g2 = X(0, 2), g3 = X(1, 0);
  return liealg::gamma_matrix(g1, g2, g3);
}

template <class K>
K g2form(const Vec<K>& v) {
  K s = Traits<K>::zero();
  for (const auto& c : v) s += c * c;
  return s;
}

template <class K>
K upsilon(const Vec<K>& v) {
  K s3 = scalar::from_field<K>(FieldScalar::sqrt3());
  K h3 = K(3) / K(2);
  const K &v1 = v[0], &v2 = v[1], &v3 = v[2], &v4 = v[3], &v5 = v[4];
  return v1 * (v1 * v1 + h3 * v2 * v2 + h3 * v3 * v3 - K(3) * v4 * v4 - K(3) * v5 * v5) +
         h3 * s3 * v4 * (v2 * v2 - v3 * v3) + K(3) * s3 * v2 * v3 * v5;
}

// Traceless symmetric 3x3 matrix attached to a quintuple.
template <class K>
Mat<K> matrix_of(const Vec<K>& v) {
  K s3 = scalar::from_field<K>(FieldScalar::sqrt3());
  K h = Traits<K>::one() / K(2);
  const K &v1 = v[0], &v2 = v[1], &v3 = v[2], &v4 = v[3], &v5 = v[4];
  return Mat<K>{{v1, h * s3 * v2, h * s3 * v3},
                {h * s3 * v2, h * (K() - v1 + s3 * v4), h * s3 * v5},
                {h * s3 * v3, h * s3 * v5, h * (K() - v1 - s3 * v4)}};
}

// Quadratic immersion of the unit sphere into the 4-sphere.
template <class K>
Vec<K> veronese(const Vec<K>& u, double tol = 1e-9) {
  K s3 = scalar::from_field<K>(FieldScalar::sqrt3());
  K h = Traits<K>::one() / K(2);
  const K &u1 = u[0], &u2 = u[1], &u3 = u[2];
  K n = u1 * u1 + u2 * u2 + u3 * u3;
  if (!Traits<K>::is_zero(n - Traits<K>::one(), Traits<K>::is_exact ? 0.0 : tol))
    throw std::domain_error("veronese: input must be a unit vector");
  return {u1 * u1 - h * u2 * u2 - h * u3 * u3, s3 * u1 * u2, s3 * u1 * u3,
          s3 * h * (u2 * u2 - u3 * u3), s3 * u2 * u3};
}

template <class K>
struct Membership {
  bool on_orbit = false;
  K invariant_value{};       // value of the cubic invariant (1 on the orbit)
  K eigen_discriminant{};    // discriminant of the characteristic cubic
};

// char poly of matrix_of(v) is x^3 + p x + q (traceless); the discriminant
// -4p^3 - 27q^2 vanishes exactly on the two repeated-eigenvalue orbits and the
// sign of the cubic invariant distinguishes them.
template <class K>
Membership<K> veronese_membership(const Vec<K>& v, double tol = 1e-9) {
  Mat<K> m = matrix_of(v);
  K p = K() - (m(0, 0) * m(0, 0) + m(1, 1) * m(1, 1) + m(2, 2) * m(2, 2)) / K(2) -
        (m(0, 1) * m(0, 1) + m(0, 2) * m(0, 2) + m(1, 2) * m(1, 2));
  K q = K() - (m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
               m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
               m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0)));
  K disc = K(-4) * p * p * p - K(27) * q * q;
  K ups = upsilon(v);
  Membership<K> r;
  r.invariant_value = ups;
  r.eigen_discriminant = disc;
  bool disc_zero = Traits<K>::is_zero(disc, Traits<K>::is_exact ? 0.0 : tol);
  bool ups_one = Traits<K>::is_zero(ups - Traits<K>::one(), Traits<K>::is_exact ? 0.0 : tol);
  r.on_orbit = disc_zero && ups_one;
  return r;
}

// degree-3 harmonic projection: p - (1/10) r^2 (Laplacian p)
template <class K>
HomPoly<K> harmonic_part3(const HomPoly<K>& p) {
  HomPoly<K> r2 = HomPoly<K>::zero(2);
  r2.coeffs[HomPoly<K>::monomial_index(2, 2, 0)] = Traits<K>::one();
  r2.coeffs[HomPoly<K>::monomial_index(2, 0, 2)] = Traits<K>::one();
  r2.coeffs[HomPoly<K>::monomial_index(2, 0, 0)] = Traits<K>::one();
  K tenth = Traits<K>::one() / K(10);
  return p - tenth * (r2 * p.laplacian());
}

// coordinates of a degree-3 harmonic polynomial in the 7-basis
template <class K>
Vec<K> h3_coords(const HomPoly<K>& p) {
  return detail::coords_in_basis<K>(h3_basis(), p);
}

// harmonic part of (a . x)^3, in 7-basis coordinates
template <class K>
Vec<K> cone_element(const K& a1, const K& a2, const K& a3) {
  HomPoly<K> lin = HomPoly<K>::zero(1);
  lin.coeffs[HomPoly<K>::monomial_index(1, 1, 0)] = a1;
  lin.coeffs[HomPoly<K>::monomial_index(1, 0, 1)] = a2;
  lin.coeffs[HomPoly<K>::monomial_index(1, 0, 0)] = a3;
  HomPoly<K> cube = lin * lin * lin;
  return h3_coords(harmonic_part3(cube));
}

// Exact rational rotations for property tests: Cayley transform of an
// antisymmetric rational matrix.
inline Mat<FieldScalar> cayley_rotation(const FieldScalar& a, const FieldScalar& b,
                                        const FieldScalar& c) {
  Mat<FieldScalar> S{{FieldScalar(0), a, b},
                     {FieldScalar(0) - a, FieldScalar(0), c},
                     {FieldScalar(0) - b, FieldScalar(0) - c, FieldScalar(0)}};
  Mat<FieldScalar> I = Mat<FieldScalar>::identity(3);
  return (I - S) * linalg::inverse(I + S);
}

}  // namespace berger::rep
