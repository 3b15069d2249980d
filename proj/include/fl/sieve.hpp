#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "fl/fraction.hpp"
#include "fl/numeric.hpp"

namespace fl {

/// Sieved arithmetic functions on 1..limit: Möbius mu, Euler phi, omega
/// (distinct prime factors), smallest prime factor, and Mertens prefix sums.
/// Immutable once built, so concurrent reads are safe.
class ArithTables {
 public:
  static constexpr std::int64_t kMaxLimit = 100'000'000;

  std::int64_t limit() const { return limit_; }

  int mu(std::int64_t n) const { return mu_[index(n)]; }
  std::int64_t phi(std::int64_t n) const { return phi_[index(n)]; }
  int omega(std::int64_t n) const { return omega_[index(n)]; }
  std::int64_t spf(std::int64_t n) const { return spf_[index(n)]; }
  std::int64_t mertens(std::int64_t n) const { return mertens_[index(n)]; }

  /// Distinct primes dividing n, ascending.
  std::vector<std::int64_t> distinct_primes(std::int64_t n) const;

  /// CSV dump: header `n,mu,phi,omega,mertens` then one row per n.
  void write_csv(std::ostream& out) const;

  friend ArithTables build_tables(std::int64_t limit);

 private:
  std::size_t index(std::int64_t n) const;

  std::int64_t limit_ = 0;
  std::vector<std::int8_t> mu_;
  std::vector<std::uint32_t> phi_;
  std::vector<std::uint8_t> omega_;
  std::vector<std::uint32_t> spf_;
  std::vector<std::int32_t> mertens_;
};

/// Linear sieve up to `limit`. Throws std::invalid_argument if limit < 1 or
/// limit > ArithTables::kMaxLimit.
ArithTables build_tables(std::int64_t limit);

/// M(t) = sum of mu(n) for n <= t.
std::int64_t mertens(const ArithTables& tables, std::int64_t t);

/// sum over d <= T of M(floor(T/d)). Equals 1 for every T >= 1.
std::int64_t mertens_dirichlet_identity(const ArithTables& tables, std::int64_t T);

/// F_beta(n) = prod over p | n of (1 + p^-beta).
double f_beta(const ArithTables& tables, std::int64_t n, double beta);

/// F_0(n) = 2^omega(n), exact.
std::int64_t f_zero(const ArithTables& tables, std::int64_t n);

/// psi(x) = x - floor(x) - 1/2, exact.
Fraction psi(const Fraction& x);

/// Distance from x to the nearest integer, exact.
Fraction dist_nearest_int(const Fraction& x);

/// psi(numer / denom) via numer mod denom. Throws on denom == 0 or numer < 0.
Fraction psi_mod(const BigInt& numer, const BigInt& denom);
Fraction psi_mod(u128 numer, std::uint64_t denom);

/// Floating psi for real arguments.
double psi_real(double x);

}  // namespace fl
