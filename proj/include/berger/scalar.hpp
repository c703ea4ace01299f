#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <iosfwd>
#include <sstream>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace berger::scalar {

using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& q) { return q.template convert_to<double>(); }

// Element of the real field Q(sqrt2, sqrt3, sqrt5), stored on the basis
// {1, s2, s3, s5, s6, s10, s15, s30} indexed by squarefree mask:
// bit0 <-> factor 2, bit1 <-> factor 3, bit2 <-> factor 5.
class FieldScalar {
 public:
  FieldScalar() = default;
  FieldScalar(long n) { c_[0] = n; }
  FieldScalar(const Rational& q) { c_[0] = q; }
  FieldScalar(long num, long den) { c_[0] = Rational(num, den); }

  static FieldScalar radical(unsigned mask) {
    FieldScalar r;
    r.c_[mask & 7u] = 1;
    return r;
  }
  static FieldScalar sqrt2() { return radical(1); }
  static FieldScalar sqrt3() { return radical(2); }
  static FieldScalar sqrt5() { return radical(4); }
  static FieldScalar sqrt6() { return radical(3); }
  static FieldScalar sqrt10() { return radical(5); }
  static FieldScalar sqrt15() { return radical(6); }
  static FieldScalar sqrt30() { return radical(7); }
  // golden ratio (1+sqrt5)/2
  static FieldScalar tau() {
    FieldScalar r;
    r.c_[0] = Rational(1, 2);
    r.c_[4] = Rational(1, 2);
    return r;
  }

  const Rational& coord(unsigned mask) const { return c_[mask & 7u]; }
  Rational& coord(unsigned mask) { return c_[mask & 7u]; }

  bool is_zero() const {
    for (const auto& q : c_)
      if (q != 0) return false;
    return true;
  }
  bool is_rational() const {
    for (unsigned m = 1; m < 8; ++m)
      if (c_[m] != 0) return false;
    return true;
  }
  const Rational& rational_part() const { return c_[0]; }

  FieldScalar operator-() const {
    FieldScalar r;
    for (unsigned m = 0; m < 8; ++m) r.c_[m] = -c_[m];
    return r;
  }
  FieldScalar& operator+=(const FieldScalar& o) {
    for (unsigned m = 0; m < 8; ++m) c_[m] += o.c_[m];
    return *this;
  }
  FieldScalar& operator-=(const FieldScalar& o) {
    for (unsigned m = 0; m < 8; ++m) c_[m] -= o.c_[m];
    return *this;
  }
  friend FieldScalar operator+(FieldScalar a, const FieldScalar& b) { return a += b; }
  friend FieldScalar operator-(FieldScalar a, const FieldScalar& b) { return a -= b; }

  friend FieldScalar operator*(const FieldScalar& a, const FieldScalar& b) {
    FieldScalar r;
    for (unsigned i = 0; i < 8; ++i) {
      if (a.c_[i] == 0) continue;
      for (unsigned j = 0; j < 8; ++j) {
        if (b.c_[j] == 0) continue;
        // b_i * b_j = k * b_{i xor j}, k = product of primes in (i & j)
        long k = 1;
        unsigned common = i & j;
        if (common & 1u) k *= 2;
        if (common & 2u) k *= 3;
        if (common & 4u) k *= 5;
        r.c_[i ^ j] += a.c_[i] * b.c_[j] * k;
      }
    }
    return r;
  }
  FieldScalar& operator*=(const FieldScalar& o) { return *this = *this * o; }

  // Galois conjugation flipping the sign of the primes selected by s (bits as above).
  FieldScalar conjugate(unsigned s) const {
    FieldScalar r;
    for (unsigned m = 0; m < 8; ++m) {
      int parity = __builtin_popcount(m & s & 7u) & 1;
      r.c_[m] = parity ? -c_[m] : c_[m];
    }
    return r;
  }

  FieldScalar inverse() const {
    if (is_zero()) throw std::domain_error("FieldScalar: division by zero");
    // product of the 7 nontrivial Galois conjugates; a * num is rational (the norm)
    FieldScalar num(1);
    for (unsigned s = 1; s < 8; ++s) num *= conjugate(s);
    FieldScalar prod = (*this) * num;
    if (!prod.is_rational() || prod.c_[0] == 0)
      throw std::logic_error("FieldScalar: norm computation failed");
    Rational inv_norm = Rational(1) / prod.c_[0];
    FieldScalar r;
    for (unsigned m = 0; m < 8; ++m) r.c_[m] = num.c_[m] * inv_norm;
    return r;
  }
  friend FieldScalar operator/(const FieldScalar& a, const FieldScalar& b) {
    return a * b.inverse();
  }
  FieldScalar& operator/=(const FieldScalar& o) { return *this = *this * o.inverse(); }

  friend bool operator==(const FieldScalar& a, const FieldScalar& b) {
    for (unsigned m = 0; m < 8; ++m)
      if (a.c_[m] != b.c_[m]) return false;
    return true;
  }
  friend bool operator!=(const FieldScalar& a, const FieldScalar& b) { return !(a == b); }

  double to_double() const {
    // indexed by squarefree mask: 1, s2, s3, s6, s5, s10, s15, s30
    static const double kRad[8] = {1.0,
                                   1.4142135623730950488,
                                   1.7320508075688772935,
                                   2.4494897427831780982,
                                   2.2360679774997896964,
                                   3.1622776601683793320,
                                   3.8729833462074168852,
                                   5.4772255750516611346};
    double v = 0;
    for (unsigned m = 0; m < 8; ++m)
      if (c_[m] != 0) v += scalar::to_double(c_[m]) * kRad[m];
    return v;
  }

  // Serialization: 8 "p/q" strings in the fixed basis order 1,s2,s3,s5,s6,s10,s15,s30.
  static constexpr std::array<unsigned, 8> kSerialMasks{0, 1, 2, 4, 3, 5, 6, 7};
  std::array<std::string, 8> serialize() const {
    std::array<std::string, 8> out;
    for (int i = 0; i < 8; ++i) {
      std::ostringstream ss;
      ss << numerator(c_[kSerialMasks[i]]) << "/" << denominator(c_[kSerialMasks[i]]);
      out[i] = ss.str();
    }
    return out;
  }
  static FieldScalar deserialize(const std::array<std::string, 8>& parts) {
    FieldScalar r;
    for (int i = 0; i < 8; ++i) {
      auto slash = parts[i].find('/');
      if (slash == std::string::npos) throw std::invalid_argument("FieldScalar: bad token");
      boost::multiprecision::cpp_int num(parts[i].substr(0, slash));
      boost::multiprecision::cpp_int den(parts[i].substr(slash + 1));
      r.c_[kSerialMasks[i]] = Rational(num, den);
    }
    return r;
  }

 private:
  std::array<Rational, 8> c_{};
};

// sqrt of a rational if it stays in the field (squarefree part must be one of
// 1,2,3,5,6,10,15,30). Intended for the small norms of the fixed catalogue.
inline bool rational_sqrt_in_field(const Rational& q, FieldScalar* out) {
  using Int = boost::multiprecision::cpp_int;
  if (q < 0) return false;
  if (q == 0) {
    *out = FieldScalar(0);
    return true;
  }
  Int n = numerator(q) * denominator(q);
  Int root = 1, square = 1;
  for (Int p = 2; p * p <= n && p < 4000; ++p) {
    while (n % (p * p) == 0) {
      n /= p * p;
      root *= p;
    }
  }
  unsigned mask = 0;
  if (n % 2 == 0) { n /= 2; mask |= 1; }
  if (n % 3 == 0) { n /= 3; mask |= 2; }
  if (n % 5 == 0) { n /= 5; mask |= 4; }
  if (n != 1) return false;
  FieldScalar r = FieldScalar::radical(mask);
  r.coord(mask) = Rational(root, denominator(q));
  *out = r;
  return true;
}

// sqrt within the field of a rational-or-monomial field element; nullopt-style bool.
inline bool field_sqrt(const FieldScalar& a, FieldScalar* out) {
  if (a.is_rational()) return rational_sqrt_in_field(a.rational_part(), out);
  return false;
}

template <class K>
struct Complex {
  K re{}, im{};
  Complex() = default;
  Complex(K r) : re(std::move(r)) {}
  Complex(K r, K i) : re(std::move(r)), im(std::move(i)) {}
  static Complex i() { return Complex(K(0), K(1)); }
  Complex conj() const { return Complex(re, K(0) - im); }
  K abs2() const { return re * re + im * im; }
  Complex operator-() const { return Complex(K(0) - re, K(0) - im); }
  friend Complex operator+(const Complex& a, const Complex& b) {
    return Complex(a.re + b.re, a.im + b.im);
  }
  friend Complex operator-(const Complex& a, const Complex& b) {
    return Complex(a.re - b.re, a.im - b.im);
  }
  friend Complex operator*(const Complex& a, const Complex& b) {
    return Complex(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
  }
  friend Complex operator/(const Complex& a, const Complex& b) {
    K d = b.abs2();
    Complex n = a * b.conj();
    return Complex(n.re / d, n.im / d);
  }
  Complex& operator+=(const Complex& o) { return *this = *this + o; }
  Complex& operator-=(const Complex& o) { return *this = *this - o; }
  Complex& operator*=(const Complex& o) { return *this = *this * o; }
  friend bool operator==(const Complex& a, const Complex& b) {
    return a.re == b.re && a.im == b.im;
  }
};

enum class Mode { kExact, kFloat };

struct ModeConfig {
  Mode mode = Mode::kExact;
  double tol = 1e-9;
};

// ---- scalar trait layer: the algebra templates accept Fq, double and their
// complexifications through these helpers.

template <class K>
struct Traits;

template <>
struct Traits<FieldScalar> {
  static constexpr bool is_exact = true;
  static constexpr bool is_complex = false;
  using Real = FieldScalar;
  static FieldScalar zero() { return FieldScalar(0); }
  static FieldScalar one() { return FieldScalar(1); }
  static bool is_zero(const FieldScalar& a, double) { return a.is_zero(); }
  static double embed(const FieldScalar& a) { return a.to_double(); }
  static FieldScalar conj(const FieldScalar& a) { return a; }
  static FieldScalar from_field(const FieldScalar& a) { return a; }
};

template <>
struct Traits<double> {
  static constexpr bool is_exact = false;
  static constexpr bool is_complex = false;
  using Real = double;
  static double zero() { return 0.0; }
  static double one() { return 1.0; }
  static bool is_zero(double a, double tol) { return std::fabs(a) <= tol; }
  static double embed(double a) { return a; }
  static double conj(double a) { return a; }
  static double from_field(const FieldScalar& a) { return a.to_double(); }
};

template <class R>
struct Traits<Complex<R>> {
  static constexpr bool is_exact = Traits<R>::is_exact;
  static constexpr bool is_complex = true;
  using Real = R;
  static Complex<R> zero() { return Complex<R>(Traits<R>::zero()); }
  static Complex<R> one() { return Complex<R>(Traits<R>::one()); }
  static bool is_zero(const Complex<R>& a, double tol) {
    return Traits<R>::is_zero(a.re, tol) && Traits<R>::is_zero(a.im, tol);
  }
  static double embed(const Complex<R>& a) {
    double re = Traits<R>::embed(a.re), im = Traits<R>::embed(a.im);
    return std::sqrt(re * re + im * im);
  }
  static Complex<R> conj(const Complex<R>& a) { return a.conj(); }
  static Complex<R> from_field(const FieldScalar& a) {
    return Complex<R>(Traits<R>::from_field(a));
  }
};

template <class K>
double abs_embed(const K& a) {
  double v = Traits<K>::embed(a);
  return Traits<K>::is_complex ? v : std::fabs(v);
}

template <class K>
K from_field(const FieldScalar& a) {
  return Traits<K>::from_field(a);
}

}  // namespace berger::scalar
