#pragma once

#include <algorithm>
#include <cassert>
#include <cmath>
#include <initializer_list>
#include <stdexcept>
#include <vector>

#include "berger/scalar.hpp"

namespace berger::linalg {

using scalar::FieldScalar;
using scalar::Traits;

template <class K>
using Vec = std::vector<K>;

template <class K>
class Mat {
 public:
  Mat() = default;
  Mat(int rows, int cols) : rows_(rows), cols_(cols), a_(rows * cols, Traits<K>::zero()) {}
  Mat(std::initializer_list<std::initializer_list<K>> rows) {
    rows_ = static_cast<int>(rows.size());
    cols_ = rows_ ? static_cast<int>(rows.begin()->size()) : 0;
    a_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      assert(static_cast<int>(r.size()) == cols_);
      for (const auto& v : r) a_.push_back(v);
    }
  }
  static Mat identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = Traits<K>::one();
    return m;
  }
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  K& operator()(int i, int j) { return a_[i * cols_ + j]; }
  const K& operator()(int i, int j) const { return a_[i * cols_ + j]; }

  Mat transpose() const {
    Mat t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }
  friend Mat operator*(const Mat& a, const Mat& b) {
    assert(a.cols_ == b.rows_);
    Mat c(a.rows_, b.cols_);
    for (int i = 0; i < a.rows_; ++i)
      for (int k = 0; k < a.cols_; ++k) {
        const K& aik = a(i, k);
        if (Traits<K>::is_zero(aik, 0.0)) continue;
        for (int j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }
  friend Vec<K> operator*(const Mat& a, const Vec<K>& v) {
    assert(a.cols_ == static_cast<int>(v.size()));
    Vec<K> r(a.rows_, Traits<K>::zero());
    for (int i = 0; i < a.rows_; ++i)
      for (int j = 0; j < a.cols_; ++j) r[i] += a(i, j) * v[j];
    return r;
  }
  friend Mat operator+(const Mat& a, const Mat& b) {
    Mat c = a;
    for (size_t i = 0; i < c.a_.size(); ++i) c.a_[i] += b.a_[i];
    return c;
  }
  friend Mat operator-(const Mat& a, const Mat& b) {
    Mat c = a;
    for (size_t i = 0; i < c.a_.size(); ++i) c.a_[i] -= b.a_[i];
    return c;
  }
  friend Mat operator*(const K& s, const Mat& a) {
    Mat c = a;
    for (auto& v : c.a_) v = s * v;
    return c;
  }
  friend bool operator==(const Mat& a, const Mat& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
  }
  Vec<K> col(int j) const {
    Vec<K> v(rows_);
    for (int i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
  }
  void set_col(int j, const Vec<K>& v) {
    for (int i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
  }
  double max_abs() const {
    double m = 0;
    for (const auto& v : a_) m = std::max(m, scalar::abs_embed(v));
    return m;
  }

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<K> a_;
};

template <class K>
K dot(const Vec<K>& a, const Vec<K>& b) {
  K s = Traits<K>::zero();
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * Traits<K>::conj(b[i]);
  return s;
}

template <class K>
Vec<K> axpy(const K& c, const Vec<K>& x, const Vec<K>& y) {
  Vec<K> r = y;
  for (size_t i = 0; i < x.size(); ++i) r[i] += c * x[i];
  return r;
}

template <class K>
double max_abs(const Vec<K>& v) {
  double m = 0;
  for (const auto& e : v) m = std::max(m, scalar::abs_embed(e));
  return m;
}

// Row echelon with pivot selection appropriate to the scalar type. Works on an
// augmented system in place; returns pivot columns.
template <class K>
std::vector<int> row_reduce(Mat<K>& m, double tol = 1e-12) {
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < m.cols() && r < m.rows(); ++c) {
    int p = -1;
    if constexpr (Traits<K>::is_exact) {
      for (int i = r; i < m.rows(); ++i)
        if (!Traits<K>::is_zero(m(i, c), 0.0)) {
          p = i;
          break;
        }
    } else {
      double best = tol;
      for (int i = r; i < m.rows(); ++i) {
        double v = scalar::abs_embed(m(i, c));
        if (v > best) {
          best = v;
          p = i;
        }
      }
    }
    if (p < 0) continue;
    if (p != r)
      for (int j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
    K inv = Traits<K>::one() / m(r, c);
    for (int j = 0; j < m.cols(); ++j) m(r, j) = inv * m(r, j);
    for (int i = 0; i < m.rows(); ++i) {
      if (i == r) continue;
      K f = m(i, c);
      if (Traits<K>::is_zero(f, 0.0)) continue;
      for (int j = 0; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

template <class K>
int rank(Mat<K> m, double tol = 1e-12) {
  return static_cast<int>(row_reduce(m, tol).size());
}

// Solve A x = b; throws if inconsistent or underdetermined.
template <class K>
Vec<K> solve(const Mat<K>& A, const Vec<K>& b, double tol = 1e-12) {
  Mat<K> aug(A.rows(), A.cols() + 1);
  for (int i = 0; i < A.rows(); ++i) {
    for (int j = 0; j < A.cols(); ++j) aug(i, j) = A(i, j);
    aug(i, A.cols()) = b[i];
  }
  auto piv = row_reduce(aug, tol);
  if (!piv.empty() && piv.back() == A.cols())
    throw std::domain_error("solve: inconsistent system");
  if (static_cast<int>(piv.size()) < A.cols())
    throw std::domain_error("solve: underdetermined system");
  Vec<K> x(A.cols(), Traits<K>::zero());
  for (size_t r = 0; r < piv.size(); ++r) x[piv[r]] = aug(static_cast<int>(r), A.cols());
  return x;
}

template <class K>
Mat<K> inverse(const Mat<K>& A, double tol = 1e-12) {
  int n = A.rows();
  Mat<K> aug(n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug(i, j) = A(i, j);
    aug(i, n + i) = Traits<K>::one();
  }
  auto piv = row_reduce(aug, tol);
  if (static_cast<int>(piv.size()) < n || piv[n - 1] != n - 1)
    throw std::domain_error("inverse: singular matrix");
  Mat<K> inv(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

// Basis of the null space of A.
template <class K>
std::vector<Vec<K>> kernel(Mat<K> A, double tol = 1e-12) {
  auto piv = row_reduce(A, tol);
  std::vector<bool> is_pivot(A.cols(), false);
  for (int c : piv) is_pivot[c] = true;
  std::vector<Vec<K>> basis;
  for (int c = 0; c < A.cols(); ++c) {
    if (is_pivot[c]) continue;
    Vec<K> v(A.cols(), Traits<K>::zero());
    v[c] = Traits<K>::one();
    for (size_t r = 0; r < piv.size(); ++r) v[piv[r]] = K() - A(static_cast<int>(r), c);
    basis.push_back(std::move(v));
  }
  return basis;
}

// Gram-Schmidt without normalization: output spans the same flag, pairwise
// orthogonal, stays in the scalar field. Drops (near-)zero vectors.
template <class K>
std::vector<Vec<K>> orthogonalize(const std::vector<Vec<K>>& in, double tol = 1e-12) {
  std::vector<Vec<K>> out;
  for (auto v : in) {
    for (const auto& u : out) {
      K c = K() - dot(v, u) / dot(u, u);
      v = axpy(c, u, v);
    }
    bool zero;
    if constexpr (Traits<K>::is_exact) {
      zero = true;
      for (const auto& e : v) zero = zero && Traits<K>::is_zero(e, 0.0);
    } else {
      zero = max_abs(v) <= tol;
    }
    if (!zero) out.push_back(std::move(v));
  }
  return out;
}

// Same span test for two column collections.
template <class K>
bool same_span(const std::vector<Vec<K>>& a, const std::vector<Vec<K>>& b, double tol = 1e-9) {
  if (a.empty() && b.empty()) return true;
  int n = static_cast<int>(a.empty() ? b[0].size() : a[0].size());
  Mat<K> ma(n, static_cast<int>(a.size())), mj(n, static_cast<int>(a.size() + b.size()));
  Mat<K> mb(n, static_cast<int>(b.size()));
  for (size_t j = 0; j < a.size(); ++j)
    for (int i = 0; i < n; ++i) ma(i, static_cast<int>(j)) = mj(i, static_cast<int>(j)) = a[j][i];
  for (size_t j = 0; j < b.size(); ++j)
    for (int i = 0; i < n; ++i)
      mb(i, static_cast<int>(j)) = mj(i, static_cast<int>(a.size() + j)) = b[j][i];
  int ra = rank(ma, tol), rb = rank(mb, tol), rj = rank(mj, tol);
  return ra == rb && rb == rj;
}

// Symmetric eigensolve by cyclic Jacobi (float only); returns eigenvalues
// ascending and the orthogonal matrix of column eigenvectors.
inline void sym_eigen(Mat<double> A, std::vector<double>* eigenvalues, Mat<double>* vecs) {
  int n = A.rows();
  Mat<double> V = Mat<double>::identity(n);
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) off += A(p, q) * A(p, q);
    if (off < 1e-28) break;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) {
        if (std::fabs(A(p, q)) < 1e-300) continue;
        double theta = (A(q, q) - A(p, p)) / (2 * A(p, q));
        double t = (theta >= 0 ? 1.0 : -1.0) / (std::fabs(theta) + std::sqrt(theta * theta + 1));
        double c = 1 / std::sqrt(t * t + 1), s = t * c;
        for (int k = 0; k < n; ++k) {
          double akp = A(k, p), akq = A(k, q);
          A(k, p) = c * akp - s * akq;
          A(k, q) = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          double apk = A(p, k), aqk = A(q, k);
          A(p, k) = c * apk - s * aqk;
          A(q, k) = s * apk + c * aqk;
        }
        for (int k = 0; k < n; ++k) {
          double vkp = V(k, p), vkq = V(k, q);
          V(k, p) = c * vkp - s * vkq;
          V(k, q) = s * vkp + c * vkq;
        }
      }
  }
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](int i, int j) { return A(i, i) < A(j, j); });
  eigenvalues->resize(n);
  Mat<double> Vs(n, n);
  for (int j = 0; j < n; ++j) {
    (*eigenvalues)[j] = A(order[j], order[j]);
    for (int i = 0; i < n; ++i) Vs(i, j) = V(i, order[j]);
  }
  *vecs = Vs;
}

// Thin QR by modified Gram-Schmidt (float), for frame retractions.
inline Mat<double> qr_q(const Mat<double>& A) {
  int n = A.rows(), k = A.cols();
  Mat<double> Q(n, k);
  for (int j = 0; j < k; ++j) {
    Vec<double> v = A.col(j);
    for (int p = 0; p < j; ++p) {
      double c = 0;
      for (int i = 0; i < n; ++i) c += Q(i, p) * v[i];
      for (int i = 0; i < n; ++i) v[i] -= c * Q(i, p);
    }
    double nrm = std::sqrt(dot(v, v));
    if (nrm < 1e-300) throw std::domain_error("qr_q: rank deficient");
    for (int i = 0; i < n; ++i) Q(i, j) = v[i] / nrm;
  }
  return Q;
}

}  // namespace berger::linalg
