#include <doctest.h>

#include <random>
#include <stdexcept>

#include "fl/fraction.hpp"
#include "fl/numeric.hpp"

using fl::BigInt;
using fl::Fraction;

TEST_CASE("fractions are stored reduced with a positive denominator") {
  const Fraction f(6, -8);
  CHECK(f.num() == -3);
  CHECK(f.den() == 4);
  CHECK(Fraction(0, 5).den() == 1);
  CHECK_THROWS_AS(Fraction(1, 0), std::invalid_argument);
  CHECK_THROWS_AS(Fraction(BigInt(1), BigInt(0)), std::invalid_argument);
}

TEST_CASE("arithmetic is exact") {
  CHECK(Fraction(1, 3) + Fraction(1, 6) == Fraction(1, 2));
  CHECK(Fraction(1, 3) - Fraction(1, 2) == Fraction(-1, 6));
  CHECK(Fraction(2, 3) * Fraction(9, 4) == Fraction(3, 2));
  CHECK(Fraction(2, 3) / Fraction(4, 9) == Fraction(3, 2));
  CHECK(-Fraction(2, 3) == Fraction(-2, 3));
  CHECK(Fraction(1, 3) < Fraction(1, 2));
  CHECK(Fraction(-1, 2) < Fraction(0));
  CHECK_THROWS(Fraction(1, 3) / Fraction(0));
}

TEST_CASE("floor, ceil and abs") {
  CHECK(Fraction(7, 4).floor() == 1);
  CHECK(Fraction(-7, 4).floor() == -2);
  CHECK(Fraction(7, 4).ceil() == 2);
  CHECK(Fraction(-7, 4).ceil() == -1);
  CHECK(Fraction(3).floor() == 3);
  CHECK(Fraction(-5, 2).abs() == Fraction(5, 2));
}

TEST_CASE("parse and print") {
  CHECK(Fraction::parse("3/4") == Fraction(3, 4));
  CHECK(Fraction::parse("-6/8") == Fraction(-3, 4));
  CHECK(Fraction::parse("12") == Fraction(12));
  CHECK(Fraction::parse("-0.125") == Fraction(-1, 8));
  CHECK(Fraction::parse("0.459") == Fraction(459, 1000));
  CHECK_THROWS_AS(Fraction::parse("abc"), std::invalid_argument);
  CHECK_THROWS_AS(Fraction::parse("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(Fraction::parse(""), std::invalid_argument);
  CHECK(Fraction(-3, 4).to_string() == "-3/4");
  CHECK(Fraction(8, 4).to_string() == "2");
}

TEST_CASE("conversion to floating point") {
  CHECK(Fraction(1, 4).to_double() == 0.25);
  CHECK(Fraction(-1, 3).to_long_double() == doctest::Approx(-1.0 / 3.0).epsilon(1e-15));
  const Fraction big(BigInt("123456789012345678901234567890"), BigInt(7));
  CHECK(big.to_long_double() / 1.7636684144620811e28L == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("random field identities") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::int64_t> num(-1000, 1000), den(1, 1000);
  for (int i = 0; i < 2000; ++i) {
    const Fraction a(num(rng), den(rng)), b(num(rng), den(rng)), c(num(rng), den(rng));
    CHECK((a + b) + c == a + (b + c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a - a == Fraction(0));
    if (b != Fraction(0)) CHECK((a / b) * b == a);
  }
}

TEST_CASE("compensated sum beats naive accumulation") {
  fl::CompensatedSum<double> s;
  s += 1.0;
  for (int i = 0; i < 1000; ++i) s += 1e-16;
  s += -1.0;
  CHECK(s.value() == doctest::Approx(1e-13).epsilon(1e-9));
}

TEST_CASE("128-bit helpers") {
  CHECK(fl::to_string(static_cast<fl::i128>(-12345)) == "-12345");
  const fl::i128 big = static_cast<fl::i128>(1) << 100;
  CHECK(fl::to_string(big) == "1267650600228229401496703205376");
  CHECK_THROWS_AS(fl::checked_mul(big, big, "test"), std::overflow_error);
  CHECK(fl::mulmod(~0ULL, ~0ULL, 1'000'000'007ULL) ==
        static_cast<std::uint64_t>((static_cast<fl::u128>(~0ULL) * ~0ULL) % 1'000'000'007ULL));
  CHECK(fl::powmod(3, 13, 1000) == 1594323 % 1000);
}
