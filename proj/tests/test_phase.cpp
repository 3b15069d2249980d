#include <doctest.h>

#include <gmpxx.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "fl/phase.hpp"

using fl::Fraction;
using fl::RealAlpha;

namespace {

mpf_class exact_value(const RealAlpha& a) {
  mpf_class x(a.hi, 512);
  x += mpf_class(a.lo, 512);
  return x;
}

double reference_frac(unsigned long long c, const RealAlpha& a) {
  mpf_class x(0, 512);
  x = exact_value(a) * static_cast<unsigned long>(c);
  mpf_class f(0, 512);
  mpf_floor(f.get_mpf_t(), x.get_mpf_t());
  x -= f;
  return x.get_d();
}

}  // namespace

TEST_CASE("named constants carry about 106 bits") {
  mpf_class five(5, 512), two(2, 512);
  const mpf_class golden = (sqrt(five) - 1) / 2;
  const mpf_class inv = 1 / sqrt(two);
  mpf_class e1 = abs(exact_value(RealAlpha::golden_fraction()) - golden);
  mpf_class e2 = abs(exact_value(RealAlpha::inv_sqrt2()) - inv);
  CHECK(e1.get_d() < 1e-31);
  CHECK(e2.get_d() < 1e-31);
}

TEST_CASE("decimal parsing splits into hi + lo") {
  const RealAlpha a = RealAlpha::parse_decimal("0.1");
  mpf_class tenth(1, 512);
  tenth /= 10;
  mpf_class err = abs(exact_value(a) - tenth);
  CHECK(err.get_d() < 1e-32);
  CHECK(a.hi == 0.1);
  CHECK_THROWS_AS(RealAlpha::parse_decimal("x"), std::invalid_argument);
}

TEST_CASE("parse_alpha modes") {
  CHECK(std::holds_alternative<Fraction>(fl::parse_alpha("1/7", false)));
  CHECK(std::get<Fraction>(fl::parse_alpha("2/14", false)) == Fraction(1, 7));
  CHECK(std::holds_alternative<RealAlpha>(fl::parse_alpha("0.25", false)));
  CHECK(std::get<Fraction>(fl::parse_alpha("0.25", true)) == Fraction(1, 4));
  CHECK(std::holds_alternative<RealAlpha>(fl::parse_alpha("golden", false)));
  CHECK(std::holds_alternative<RealAlpha>(fl::parse_alpha("invsqrt2", true)));
  CHECK_THROWS_AS(fl::parse_alpha("1e-3", true), std::invalid_argument);
  CHECK_THROWS_AS(fl::parse_alpha("banana", false), std::invalid_argument);
  CHECK(fl::alpha_label(Fraction(1, 7)) == "1/7");
  CHECK(fl::alpha_is_exact(Fraction(1, 7)));
  CHECK_FALSE(fl::alpha_is_exact(RealAlpha::golden_fraction()));
  CHECK(fl::alpha_value(Fraction(1, 4)) == 0.25);
}

TEST_CASE("residue_mul matches big integers") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 2000; ++i) {
    const std::uint64_t q = (rng() >> 2) | 1;
    const std::uint64_t p = rng() % q;
    const fl::u128 c = (static_cast<fl::u128>(rng()) << 40) | rng();
    const mpz_class hi = mpz_class(static_cast<unsigned long>(c >> 64));
    const mpz_class lo = mpz_class(static_cast<unsigned long>(static_cast<std::uint64_t>(c)));
    const mpz_class cz = (hi << 64) + lo;
    const mpz_class expected = (cz * mpz_class(static_cast<unsigned long>(p))) % mpz_class(static_cast<unsigned long>(q));
    CHECK(fl::residue_mul(c, p, q) == expected.get_ui());
  }
}

TEST_CASE("frac_mul reduces exactly before the final rounding") {
  std::mt19937_64 rng(9);
  const RealAlpha samples[] = {RealAlpha::golden_fraction(), RealAlpha::inv_sqrt2(),
                               RealAlpha::parse_decimal("0.314159265358979323846"), RealAlpha::from_double(0.7)};
  for (const auto& a : samples) {
    for (int i = 0; i < 500; ++i) {
      const unsigned long long c = rng() >> (rng() % 64);
      const double got = fl::frac_mul(static_cast<fl::u128>(c), a);
      const double want = reference_frac(c, a);
      CHECK(got >= 0.0);
      CHECK(got < 1.0);
      const double diff = std::fabs(got - want);
      CHECK(std::min(diff, 1.0 - diff) < 1e-15);
    }
  }
  CHECK_THROWS_AS(fl::frac_mul(static_cast<fl::u128>(1) << 80, RealAlpha::golden_fraction()), std::overflow_error);
}

TEST_CASE("frac_mul on rationals is exact") {
  CHECK(fl::frac_mul(10, fl::Alpha(Fraction(1, 4))) == 0.5);
  CHECK(fl::frac_mul(7, fl::Alpha(Fraction(3, 7))) == 0.0);
  CHECK(fl::frac_mul(static_cast<fl::u128>(1) << 100, fl::Alpha(Fraction(1, 3))) == doctest::Approx(1.0 / 3.0));
}
