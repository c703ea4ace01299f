#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "berger/form.hpp"
#include "berger/linalg.hpp"
#include "berger/scalar.hpp"

namespace berger::liealg {

using linalg::Mat;
using linalg::Vec;
using scalar::FieldScalar;

// Structure constants of a Lie algebra in a fixed basis:
// [X_i, X_j] = sum_k c[i][j][k] X_k, stored exactly.
class StructureConstants {
 public:
  StructureConstants() = default;
  StructureConstants(int dim) : dim_(dim), c_(dim * dim * dim, FieldScalar(0)) {}

  int dim() const { return dim_; }
  const FieldScalar& at(int i, int j, int k) const { return c_[(i * dim_ + j) * dim_ + k]; }
  FieldScalar& at(int i, int j, int k) { return c_[(i * dim_ + j) * dim_ + k]; }

  // Computed from a matrix basis and an exact coordinate extractor.
  static StructureConstants from_basis(
      const std::vector<Mat<FieldScalar>>& basis,
      const std::function<Vec<FieldScalar>(const Mat<FieldScalar>&)>& coords) {
    int n = static_cast<int>(basis.size());
    StructureConstants sc(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        Mat<FieldScalar> br = basis[i] * basis[j] - basis[j] * basis[i];
        Vec<FieldScalar> co = coords(br);
        for (int k = 0; k < n; ++k) sc.at(i, j, k) = co[k];
      }
    return sc;
  }

  bool antisymmetric() const {
    for (int i = 0; i < dim_; ++i)
      for (int j = 0; j < dim_; ++j)
        for (int k = 0; k < dim_; ++k)
          if (at(i, j, k) != FieldScalar(0) - at(j, i, k)) return false;
    return true;
  }

  // Jacobi identity, exact.
  bool jacobi_holds() const {
    for (int i = 0; i < dim_; ++i)
      for (int j = i + 1; j < dim_; ++j)
        for (int k = j + 1; k < dim_; ++k)
          for (int m = 0; m < dim_; ++m) {
            FieldScalar s(0);
            for (int l = 0; l < dim_; ++l) {
              s += at(i, j, l) * at(l, k, m);
              s += at(j, k, l) * at(l, i, m);
              s += at(k, i, l) * at(l, j, m);
            }
            if (!s.is_zero()) return false;
          }
    return true;
  }

 private:
  int dim_ = 0;
  std::vector<FieldScalar> c_;
};

// Chevalley-Eilenberg differential on left-invariant forms over the coframe
// dual to the chosen basis: d e^k = -sum_{i<j} c_{ij}^k e^i ^ e^j, extended as
// an antiderivation.
template <class K>
class CoframeCalculus {
 public:
  explicit CoframeCalculus(const StructureConstants& sc) : dim_(sc.dim()) {
    d1_.resize(dim_);
    for (int k = 0; k < dim_; ++k)
      for (int i = 0; i < dim_; ++i)
        for (int j = i + 1; j < dim_; ++j) {
          const FieldScalar& c = sc.at(i, j, k);
          if (!c.is_zero())
            d1_[k].accumulate(mono_of({i, j}), K() - scalar::from_field<K>(c));
        }
  }

  int dim() const { return dim_; }
  const Form<K>& d_basis(int k) const { return d1_[k]; }

  Form<K> d(const Form<K>& f) const {
    Form<K> out;
    for (const auto& [m, c] : f.terms()) {
      int pos = 0;
      for (int i = 0; i < dim_; ++i) {
        Mono bit = static_cast<Mono>(1u << i);
        if (!(m & bit)) continue;
        Mono rest = static_cast<Mono>(m & ~bit);
        K cc = (pos & 1) ? K() - c : c;
        // d(e^i) ^ e^rest
        for (const auto& [dm, dc] : d1_[i].terms()) {
          if (dm & rest) continue;
          K v = cc * dc;
          if (merge_sign(dm, rest) < 0) v = K() - v;
          out.accumulate(static_cast<Mono>(dm | rest), v);
        }
        ++pos;
      }
    }
    return out;
  }

 private:
  int dim_;
  std::vector<Form<K>> d1_;
};

}  // namespace berger::liealg
