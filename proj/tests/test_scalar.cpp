#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "berger/scalar.hpp"

using berger::scalar::Complex;
using berger::scalar::FieldScalar;
using berger::scalar::Rational;

namespace {

FieldScalar random_scalar(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-12, 12);
  std::uniform_int_distribution<int> den(1, 9);
  std::uniform_int_distribution<int> mask(0, 7);
  FieldScalar x;
  for (int t = 0; t < 3; ++t) {
    FieldScalar term = FieldScalar::radical(mask(rng));
    x += FieldScalar(Rational(num(rng), den(rng))) * term;
  }
  return x;
}

}  // namespace

TEST_CASE("basis relations") {
  CHECK(FieldScalar::sqrt2() * FieldScalar::sqrt3() == FieldScalar::sqrt6());
  CHECK(FieldScalar::sqrt2() * FieldScalar::sqrt5() == FieldScalar::sqrt10());
  CHECK(FieldScalar::sqrt3() * FieldScalar::sqrt5() == FieldScalar::sqrt15());
  CHECK(FieldScalar::sqrt2() * FieldScalar::sqrt15() == FieldScalar::sqrt30());
  CHECK(FieldScalar::sqrt2() * FieldScalar::sqrt2() == FieldScalar(2));
  CHECK(FieldScalar::sqrt30() * FieldScalar::sqrt30() == FieldScalar(30));
  CHECK(FieldScalar::sqrt6() * FieldScalar::sqrt10() == FieldScalar(2) * FieldScalar::sqrt15());
}

TEST_CASE("golden ratio identities") {
  FieldScalar tau = FieldScalar::tau();
  CHECK(tau * tau == tau + FieldScalar(1));
  CHECK(tau.inverse() == tau - FieldScalar(1));
  CHECK(tau.to_double() == doctest::Approx(1.6180339887498949).epsilon(1e-15));
}

TEST_CASE("difference of squares") {
  FieldScalar a = FieldScalar(1) + FieldScalar::sqrt2();
  FieldScalar b = FieldScalar(1) - FieldScalar::sqrt2();
  CHECK(a * b == FieldScalar(-1));
}

TEST_CASE("inverses") {
  CHECK(FieldScalar::sqrt5().inverse() == FieldScalar(Rational(1, 5)) * FieldScalar::sqrt5());
  CHECK(FieldScalar(2).inverse() == FieldScalar(1, 2));
  CHECK_THROWS_AS(FieldScalar(0).inverse(), std::domain_error);
}

TEST_CASE("ring axioms on random triples") {
  std::mt19937_64 rng(12345);
  for (int i = 0; i < 1000; ++i) {
    FieldScalar a = random_scalar(rng), b = random_scalar(rng), c = random_scalar(rng);
    CHECK((a + b) * c == a * c + b * c);
    CHECK(a * (b * c) == (a * b) * c);
    CHECK(a * b == b * a);
  }
}

TEST_CASE("inverse round trips") {
  std::mt19937_64 rng(777);
  int checked = 0;
  while (checked < 1000) {
    FieldScalar a = random_scalar(rng);
    if (a.is_zero()) continue;
    CHECK(a.inverse().inverse() == a);
    CHECK(a * a.inverse() == FieldScalar(1));
    ++checked;
  }
}

TEST_CASE("embedding is a near-homomorphism") {
  std::mt19937_64 rng(99);
  for (int i = 0; i < 500; ++i) {
    FieldScalar a = random_scalar(rng), b = random_scalar(rng);
    double lhs = (a * b).to_double();
    double rhs = a.to_double() * b.to_double();
    // ulp scale of the accumulated terms, not of the (possibly cancelling) result
    auto abs_embed = [](const FieldScalar& x) {
      double s = 0;
      for (unsigned m = 0; m < 8; ++m)
        s += std::fabs(berger::scalar::to_double(x.coord(m))) * FieldScalar::radical(m).to_double();
      return s;
    };
    double scale = std::max(1.0, abs_embed(a) * abs_embed(b));
    CHECK(std::fabs(lhs - rhs) <= 4e-15 * scale);
  }
  CHECK(FieldScalar::sqrt2().to_double() == doctest::Approx(1.4142135623730951).epsilon(1e-16));
  CHECK(FieldScalar(0).to_double() == 0.0);
}

TEST_CASE("monotone embedding on positives") {
  // positivity of radicals under the chosen embedding
  CHECK(FieldScalar::sqrt2().to_double() > 0);
  CHECK((FieldScalar::sqrt6() - FieldScalar::sqrt5()).to_double() > 0);
}

TEST_CASE("serialization round trip") {
  std::mt19937_64 rng(4242);
  for (int i = 0; i < 50; ++i) {
    FieldScalar a = random_scalar(rng);
    CHECK(FieldScalar::deserialize(a.serialize()) == a);
  }
  CHECK(FieldScalar::tau().serialize()[0] == "1/2");
  CHECK(FieldScalar::tau().serialize()[3] == "1/2");
}

TEST_CASE("field square roots of small rationals") {
  FieldScalar r;
  REQUIRE(berger::scalar::rational_sqrt_in_field(Rational(32), &r));
  CHECK(r == FieldScalar(4) * FieldScalar::sqrt2());
  REQUIRE(berger::scalar::rational_sqrt_in_field(Rational(9, 4), &r));
  CHECK(r == FieldScalar(3, 2));
  CHECK_FALSE(berger::scalar::rational_sqrt_in_field(Rational(7), &r));
}

TEST_CASE("complex layer") {
  using C = Complex<FieldScalar>;
  C i = C::i();
  CHECK(i * i == C(FieldScalar(-1)));
  C z(FieldScalar(1), FieldScalar::sqrt2());
  CHECK(z.conj().conj() == z);
  C w = z / z;
  CHECK(w == C(FieldScalar(1)));
  CHECK(z * z.conj() == C(z.abs2()));
}
