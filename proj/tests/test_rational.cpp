#include "chainseq/rational.hpp"

#include <gtest/gtest.h>

#include <cstdint>
#include <random>

using chainseq::DenominatorOverflow;
using chainseq::DomainError;
using chainseq::ParseError;
using chainseq::Rational;

namespace {

constexpr int kIterations = 300;

Rational random_rational(std::mt19937_64& rng, long long bound) {
  std::uniform_int_distribution<long long> num(-bound, bound);
  std::uniform_int_distribution<long long> den(1, bound);
  return Rational(num(rng), den(rng));
}

TEST(Rational, CanonicalForm) {
  EXPECT_EQ(Rational(2, 4).to_string(), "1/2");
  EXPECT_EQ(Rational(2, 4), Rational(1, 2));
  EXPECT_EQ(Rational(-6, -8), Rational(3, 4));
  EXPECT_EQ(Rational(6, -8).to_string(), "-3/4");
  EXPECT_EQ(Rational(0, 7).to_string(), "0/1");
  EXPECT_EQ(Rational(2, 4).numerator_ll(), 1);
  EXPECT_EQ(Rational(2, 4).denominator_ll(), 2);
}

TEST(Rational, ZeroDenominatorRejected) {
  EXPECT_THROW(Rational(1, 0), DomainError);
  EXPECT_THROW(Rational(1, 2) / Rational(0, 1), DomainError);
}

TEST(Rational, FieldAxiomsSpotChecked) {
  std::mt19937_64 rng(20240817);
  for (int i = 0; i < kIterations; ++i) {
    const Rational a = random_rational(rng, 1000000);
    const Rational b = random_rational(rng, 1000000);
    const Rational c = random_rational(rng, 1000000);
    EXPECT_EQ((a + b) + c, a + (b + c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ(a + b, b + a);
    EXPECT_EQ(a * b, b * a);
  }
}

TEST(Rational, ExactDivisionInverts) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < kIterations; ++i) {
    const Rational a = random_rational(rng, 100000);
    Rational b = random_rational(rng, 100000);
    if (b.sign() == 0) b = Rational(1, 3);
    EXPECT_EQ((a / b) * b, a);
  }
}

TEST(Rational, Ordering) {
  EXPECT_LT(Rational(1, 3), Rational(1, 2));
  EXPECT_GT(Rational(49, 97), Rational(1, 2));
  EXPECT_LE(Rational(1, 4), Rational(1, 4));
  EXPECT_EQ(Rational(-1, 2).sign(), -1);
  EXPECT_EQ(Rational(-1, 2).magnitude(), Rational(1, 2));
}

TEST(Rational, ToDoubleMatchesIeeeDivision) {
  EXPECT_EQ(Rational(1, 4).to_double(), 0.25);
  EXPECT_EQ(Rational(0, 1).to_double(), 0.0);
  EXPECT_EQ(Rational(49, 97).to_double(), 49.0 / 97.0);
  EXPECT_EQ(Rational(-3, 7).to_double(), -3.0 / 7.0);
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<long long> num(-(1LL << 50), 1LL << 50);
  std::uniform_int_distribution<long long> den(1, 1LL << 50);
  for (int i = 0; i < kIterations; ++i) {
    const long long p = num(rng);
    const long long q = den(rng);
    EXPECT_EQ(Rational(p, q).to_double(), static_cast<double>(p) / static_cast<double>(q))
        << p << "/" << q;
  }
}

TEST(Rational, ToDoubleRoundsTiesToEven) {
  // 2^53 + 1 is exactly half way between representable neighbours.
  EXPECT_EQ(Rational(9007199254740993LL, 1).to_double(), 9007199254740992.0);
  EXPECT_EQ(Rational(9007199254740995LL, 1).to_double(), 9007199254740996.0);
}

TEST(Rational, ParseForms) {
  EXPECT_EQ(Rational::from_string("11/50"), Rational(11, 50));
  EXPECT_EQ(Rational::from_string("-3/9"), Rational(-1, 3));
  EXPECT_EQ(Rational::from_string("0.22"), Rational(11, 50));
  EXPECT_EQ(Rational::from_string("3"), Rational(3, 1));
  EXPECT_EQ(Rational::from_string("-0.5"), Rational(-1, 2));
  EXPECT_EQ(Rational::from_string("1.5e-3"), Rational(3, 2000));
  EXPECT_EQ(Rational::from_string("2e2"), Rational(200, 1));
  EXPECT_THROW(Rational::from_string(""), ParseError);
  EXPECT_THROW(Rational::from_string("abc"), ParseError);
  EXPECT_THROW(Rational::from_string("1/0"), ParseError);
  EXPECT_THROW(Rational::from_string("1.2.3"), ParseError);
}

TEST(Rational, StringRoundTrip) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < kIterations; ++i) {
    const Rational a = random_rational(rng, 1000000000LL);
    EXPECT_EQ(Rational::from_string(a.to_string()), a);
  }
}

TEST(Rational, DenominatorBudgetGuard) {
  const std::size_t saved = chainseq::max_denominator_bits();
  chainseq::set_max_denominator_bits(64);
  Rational x(1, 3);
  EXPECT_THROW(
      {
        for (int i = 0; i < 100; ++i) x = x * Rational(1, 986527);
      },
      DenominatorOverflow);
  chainseq::set_max_denominator_bits(saved);
}

TEST(Rational, FloorLL) {
  EXPECT_EQ(Rational(7, 2).floor_ll(), 3);
  EXPECT_EQ(Rational(-7, 2).floor_ll(), -4);
  EXPECT_EQ(Rational(25, 2).floor_ll(), 12);
  EXPECT_EQ(Rational(12, 1).floor_ll(), 12);
}

}  // namespace
