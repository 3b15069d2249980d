#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>
#include <vector>

#include "fl/analysis.hpp"
#include "fl/sieve.hpp"
#include "oracles.hpp"

using fl::Fraction;

TEST_CASE("mu up to 10") {
  const auto t = fl::build_tables(10);
  const std::vector<int> expected{1, -1, -1, 0, -1, 1, -1, 0, 0, 1};
  for (int n = 1; n <= 10; ++n) CHECK(t.mu(n) == expected[n - 1]);
  CHECK(t.mertens(10) == -1);
}

TEST_CASE("limit 1 base case") {
  const auto t = fl::build_tables(1);
  CHECK(t.mu(1) == 1);
  CHECK(t.mertens(1) == 1);
  CHECK(t.phi(1) == 1);
  CHECK(t.omega(1) == 0);
}

TEST_CASE("build_tables rejects bad limits") {
  CHECK_THROWS_AS(fl::build_tables(0), std::invalid_argument);
  CHECK_THROWS_AS(fl::build_tables(fl::ArithTables::kMaxLimit + 1), std::invalid_argument);
}

TEST_CASE("tables agree with trial division") {
  const auto t = fl::build_tables(3000);
  for (std::int64_t n = 1; n <= 3000; ++n) {
    CHECK(t.mu(n) == oracle::mu(n));
    CHECK(t.omega(n) == oracle::omega(n));
    if (n > 1) CHECK(n % t.spf(n) == 0);
    if (n > 1) CHECK(t.mertens(n) - t.mertens(n - 1) == t.mu(n));
  }
  for (std::int64_t n = 1; n <= 500; ++n) CHECK(t.phi(n) == oracle::phi(n));
}

TEST_CASE("multiplicativity spot checks") {
  const auto t = fl::build_tables(100000);
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<std::int64_t> pick(1, 316);
  for (int i = 0; i < 2000; ++i) {
    const std::int64_t m = pick(rng), n = pick(rng);
    if (std::gcd(m, n) != 1) continue;
    CHECK(t.phi(m * n) == t.phi(m) * t.phi(n));
    CHECK(t.mu(m * n) == t.mu(m) * t.mu(n));
    CHECK(t.omega(m * n) == t.omega(m) + t.omega(n));
  }
}

TEST_CASE("mertens values") {
  const auto t = fl::build_tables(100);
  CHECK(fl::mertens(t, 1) == 1);
  CHECK(fl::mertens(t, 5) == -2);
  CHECK(fl::mertens(t, 10) == -1);
  CHECK(fl::mertens(t, 16) == -1);
  CHECK_THROWS_AS(fl::mertens(t, 0), std::invalid_argument);
  CHECK_THROWS_AS(fl::mertens(t, 101), std::invalid_argument);
}

TEST_CASE("mertens dirichlet identity") {
  const auto t = fl::build_tables(10000);
  CHECK(fl::mertens_dirichlet_identity(t, 1) == 1);
  CHECK(fl::mertens_dirichlet_identity(t, 3) == 1);
  for (std::int64_t T = 1; T <= 10000; ++T) REQUIRE(fl::mertens_dirichlet_identity(t, T) == 1);
  std::int64_t brute = 0;
  for (std::int64_t d = 1; d <= 10000; ++d) brute += t.mertens(10000 / d);
  CHECK(brute == 1);
  CHECK_THROWS_AS(fl::mertens_dirichlet_identity(t, 10001), std::invalid_argument);
}

TEST_CASE("F_beta") {
  const auto t = fl::build_tables(100000);
  CHECK(fl::f_beta(t, 12, 0.0) == 4.0);
  CHECK(fl::f_beta(t, 6, 1.0) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(fl::f_beta(t, 1, 0.37) == 1.0);
  for (std::int64_t n = 1; n <= 100000; ++n) {
    REQUIRE(fl::f_zero(t, n) == (std::int64_t{1} << t.omega(n)));
    REQUIRE(fl::f_beta(t, n, 0.0) == static_cast<double>(fl::f_zero(t, n)));
  }
  for (std::int64_t n = 1; n <= 2000; ++n) {
    CHECK(fl::f_beta(t, n, 0.25) <= fl::f_beta(t, n, 0.0));
    CHECK(fl::f_beta(t, n, 0.5) <= fl::f_beta(t, n, 0.25));
    CHECK(fl::f_beta(t, n, 1.0) <= fl::f_beta(t, n, 0.5));
  }
  CHECK_THROWS_AS(fl::f_beta(t, 0, 1.0), std::invalid_argument);
}

TEST_CASE("F_beta summatory growth") {
  const auto t = fl::build_tables(1'000'000);
  std::vector<fl::FitPoint> zero, half, one;
  fl::CompensatedSum<double> s0, s_half, s1;
  std::int64_t next = 1000;
  for (std::int64_t n = 1; n <= 1'000'000; ++n) {
    s0 += fl::f_beta(t, n, 0.0);
    s_half += fl::f_beta(t, n, 0.5);
    s1 += fl::f_beta(t, n, 1.0);
    if (n == next) {
      const double x = static_cast<double>(n);
      zero.push_back({x, s0.value() / (x * std::log(x))});
      half.push_back({x, s_half.value() / x});
      one.push_back({x, s1.value() / x});
      next *= 10;
    }
  }
  CHECK(fl::loglog_fit(zero).slope <= 0.05);
  CHECK(fl::loglog_fit(half).slope <= 0.05);
  CHECK(fl::loglog_fit(one).slope <= 0.05);
}

TEST_CASE("psi examples") {
  CHECK(fl::psi(Fraction(7, 4)) == Fraction(1, 4));
  CHECK(fl::psi(Fraction(3)) == Fraction(-1, 2));
  CHECK(fl::psi(Fraction(1, 2)) == Fraction(0));
  CHECK(fl::psi(Fraction(-1, 4)) == Fraction(1, 4));
}

TEST_CASE("dist_nearest_int examples") {
  CHECK(fl::dist_nearest_int(Fraction(1, 3)) == Fraction(1, 3));
  CHECK(fl::dist_nearest_int(Fraction(5, 3)) == Fraction(1, 3));
  CHECK(fl::dist_nearest_int(Fraction(1, 2)) == Fraction(1, 2));
  CHECK(fl::dist_nearest_int(Fraction(-7, 3)) == Fraction(1, 3));
}

TEST_CASE("psi_mod examples") {
  CHECK(fl::psi_mod(fl::BigInt(9), fl::BigInt(4)) == Fraction(-1, 4));
  CHECK(fl::psi_mod(fl::BigInt(0), fl::BigInt(7)) == Fraction(-1, 2));
  const fl::BigInt e15("1000000000000000");
  CHECK(fl::psi_mod(e15 + 1, e15) == Fraction(fl::BigInt(1), e15) - Fraction(1, 2));
  CHECK(fl::psi_mod(static_cast<fl::u128>(1'000'000'000'000'001ULL), 1'000'000'000'000'000ULL) ==
        Fraction(fl::BigInt(1), e15) - Fraction(1, 2));
  CHECK_THROWS_AS(fl::psi_mod(fl::BigInt(1), fl::BigInt(0)), std::invalid_argument);
  CHECK_THROWS_AS(fl::psi_mod(static_cast<fl::u128>(1), 0), std::invalid_argument);
}

TEST_CASE("psi and distance properties on random rationals") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<std::int64_t> num(-100000, 100000), den(1, 5000), shift(-50, 50);
  for (int i = 0; i < 5000; ++i) {
    const Fraction x(num(rng), den(rng));
    const Fraction p = fl::psi(x);
    CHECK(p >= Fraction(-1, 2));
    CHECK(p < Fraction(1, 2));
    CHECK((x - p - Fraction(1, 2)).is_integer());
    CHECK(p + fl::psi(-x) == (x.is_integer() ? Fraction(-1) : Fraction(0)));
    CHECK(fl::psi(x + Fraction(shift(rng))) == p);
    CHECK(p == Fraction(oracle::psi(x.raw())));

    const Fraction d = fl::dist_nearest_int(x);
    const Fraction a = x - Fraction(x.floor(), fl::BigInt(1));
    const Fraction b = Fraction(x.ceil(), fl::BigInt(1)) - x;
    CHECK(d == std::min(a, b));
    CHECK(d == std::min(Fraction(1, 2) - p, Fraction(1, 2) + p));
    if (x.num() >= 0) CHECK(fl::psi_mod(x.num(), x.den()) == p);
  }
}

TEST_CASE("psi reflection") {
  CHECK(fl::psi(Fraction(1, 4)) + fl::psi(Fraction(-1, 4)) == Fraction(0));
  CHECK(fl::psi(Fraction(5)) + fl::psi(Fraction(-5)) == Fraction(-1));
}

TEST_CASE("psi_real") {
  CHECK(fl::psi_real(1.75) == 0.25);
  CHECK(fl::psi_real(3.0) == -0.5);
  CHECK(fl::psi_real(-0.25) == 0.25);
}

TEST_CASE("csv dump") {
  const auto t = fl::build_tables(4);
  std::ostringstream os;
  t.write_csv(os);
  CHECK(os.str() == "n,mu,phi,omega,mertens\n1,1,1,0,1\n2,-1,1,1,0\n3,-1,2,1,-1\n4,0,2,1,-1\n");
}
