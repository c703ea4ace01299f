#pragma once

#include <bit>
#include <cstdint>
#include <map>
#include <type_traits>
#include <string>
#include <vector>

#include "berger/scalar.hpp"

namespace berger::liealg {

using scalar::Traits;

// Monomials of the exterior algebra over a coframe of dimension <= 16 are
// bitmasks; index i of the coframe is bit i.
using Mono = std::uint16_t;

inline int mono_degree(Mono m) { return std::popcount(m); }

// Sign picked up when e_a (all indices of `a`) is multiplied by e_b in index
// order: counts transpositions needed to interleave.
inline int merge_sign(Mono a, Mono b) {
  int sign = 1;
  while (b) {
    Mono low = b & (-b);
    int above = std::popcount(static_cast<Mono>(a & ~(low - 1) & ~low));
    if (above & 1) sign = -sign;
    b = static_cast<Mono>(b & (b - 1));
  }
  return sign;
}

inline std::vector<int> mono_indices(Mono m) {
  std::vector<int> idx;
  for (int i = 0; i < 16; ++i)
    if (m & (1u << i)) idx.push_back(i);
  return idx;
}

inline Mono mono_of(std::initializer_list<int> idx) {
  Mono m = 0;
  for (int i : idx) m |= static_cast<Mono>(1u << i);
  return m;
}

// Sparse exterior-algebra element with scalar coefficients of type K.
// Mixed-degree sums are allowed; most uses are homogeneous.
template <class K>
class Form {
 public:
  Form() = default;
  static Form zero() { return Form(); }
  static Form constant(const K& c) {
    Form f;
    f.set(0, c);
    return f;
  }
  static Form basis_1form(int i) {
    Form f;
    f.set(static_cast<Mono>(1u << i), Traits<K>::one());
    return f;
  }
  static Form monomial(Mono m, const K& c) {
    Form f;
    f.set(m, c);
    return f;
  }

  const std::map<Mono, K>& terms() const { return t_; }
  bool empty() const { return t_.empty(); }

  void set(Mono m, const K& c) {
    if (Traits<K>::is_zero(c, 0.0))
      t_.erase(m);
    else
      t_[m] = c;
  }
  void accumulate(Mono m, const K& c) {
    auto it = t_.find(m);
    if (it == t_.end()) {
      if (!Traits<K>::is_zero(c, 0.0)) t_.emplace(m, c);
    } else {
      it->second += c;
      if (Traits<K>::is_zero(it->second, 0.0)) t_.erase(it);
    }
  }
  K coeff(Mono m) const {
    auto it = t_.find(m);
    return it == t_.end() ? Traits<K>::zero() : it->second;
  }

  Form operator-() const {
    Form f;
    for (const auto& [m, c] : t_) f.t_[m] = K() - c;
    return f;
  }
  friend Form operator+(const Form& a, const Form& b) {
    Form r = a;
    for (const auto& [m, c] : b.t_) r.accumulate(m, c);
    return r;
  }
  friend Form operator-(const Form& a, const Form& b) {
    Form r = a;
    for (const auto& [m, c] : b.t_) r.accumulate(m, K() - c);
    return r;
  }
  friend Form operator*(const K& s, const Form& a) {
    Form r;
    for (const auto& [m, c] : a.t_) r.accumulate(m, s * c);
    return r;
  }
  friend Form wedge(const Form& a, const Form& b) {
    Form r;
    for (const auto& [ma, ca] : a.t_)
      for (const auto& [mb, cb] : b.t_) {
        if (ma & mb) continue;
        K c = ca * cb;
        if (merge_sign(ma, mb) < 0) c = K() - c;
        r.accumulate(static_cast<Mono>(ma | mb), c);
      }
    return r;
  }
  Form& operator+=(const Form& o) { return *this = *this + o; }
  Form& operator-=(const Form& o) { return *this = *this - o; }

  friend bool operator==(const Form& a, const Form& b) { return a.t_ == b.t_; }

  // Largest coefficient magnitude of (this - other) under the embedding.
  double max_residual(const Form& o) const {
    double m = 0;
    Form diff = *this - o;
    for (const auto& [mono, c] : diff.t_) {
      (void)mono;
      m = std::max(m, scalar::abs_embed(c));
    }
    return m;
  }
  double max_abs() const {
    double m = 0;
    for (const auto& [mono, c] : t_) {
      (void)mono;
      m = std::max(m, scalar::abs_embed(c));
    }
    return m;
  }
  bool is_zero_within(double tol) const {
    for (const auto& [mono, c] : t_) {
      (void)mono;
      if (!Traits<K>::is_zero(c, tol)) return false;
    }
    return true;
  }

  template <class K2, class Fn>
  Form<K2> map_coefficients(Fn&& fn) const {
    Form<K2> f;
    for (const auto& [m, c] : t_) f.accumulate(m, fn(c));
    return f;
  }

  // conversion along the scalar embedding (exact -> exact or exact -> float)
  template <class K2>
  Form<K2> convert() const {
    static_assert(std::is_same_v<K, scalar::FieldScalar>);
    return map_coefficients<K2>([](const K& c) { return scalar::from_field<K2>(c); });
  }

 private:
  std::map<Mono, K> t_;
};

// Interior product with the dual vector of coframe index i.
template <class K>
Form<K> contract(int i, const Form<K>& f) {
  Form<K> r;
  Mono bit = static_cast<Mono>(1u << i);
  for (const auto& [m, c] : f.terms()) {
    if (!(m & bit)) continue;
    int below = std::popcount(static_cast<Mono>(m & (bit - 1)));
    K cc = (below & 1) ? K() - c : c;
    r.accumulate(static_cast<Mono>(m & ~bit), cc);
  }
  return r;
}

template <class K>
std::string format_form(const Form<K>& f, const std::vector<std::string>& names) {
  if (f.empty()) return "0";
  std::string out;
  for (const auto& [m, c] : f.terms()) {
    if (!out.empty()) out += " + ";
    out += "(" + std::to_string(scalar::Traits<K>::embed(c)) + ")";
    for (int i : mono_indices(m)) out += "^" + names[i];
  }
  return out;
}

}  // namespace berger::liealg
