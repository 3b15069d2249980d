#include "fl/sieve.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>

namespace fl {

std::size_t ArithTables::index(std::int64_t n) const {
  if (n < 1 || n > limit_)
    throw std::invalid_argument("argument " + std::to_string(n) + " outside table range [1, " +
                                std::to_string(limit_) + "]");
  return static_cast<std::size_t>(n);
}

std::vector<std::int64_t> ArithTables::distinct_primes(std::int64_t n) const {
  index(n);
  std::vector<std::int64_t> primes;
  while (n > 1) {
    const std::int64_t p = spf_[static_cast<std::size_t>(n)];
    primes.push_back(p);
    while (n % p == 0) n /= p;
  }
  return primes;
}

void ArithTables::write_csv(std::ostream& out) const {
  out << "n,mu,phi,omega,mertens\n";
  for (std::int64_t n = 1; n <= limit_; ++n) {
    const auto i = static_cast<std::size_t>(n);
    out << n << ',' << int{mu_[i]} << ',' << phi_[i] << ',' << int{omega_[i]} << ',' << mertens_[i] << '\n';
  }
}

ArithTables build_tables(std::int64_t limit) {
  if (limit < 1) throw std::invalid_argument("build_tables: limit must be >= 1");
  if (limit > ArithTables::kMaxLimit)
    throw std::invalid_argument("build_tables: limit exceeds " + std::to_string(ArithTables::kMaxLimit));

  ArithTables t;
  t.limit_ = limit;
  const auto size = static_cast<std::size_t>(limit) + 1;
  t.mu_.assign(size, 0);
  t.phi_.assign(size, 0);
  t.omega_.assign(size, 0);
  t.spf_.assign(size, 0);
  t.mertens_.assign(size, 0);

  std::vector<std::uint32_t> primes;
  t.mu_[1] = 1;
  t.phi_[1] = 1;
  t.spf_[1] = 1;
  for (std::size_t i = 2; i < size; ++i) {
    if (t.spf_[i] == 0) {
      t.spf_[i] = static_cast<std::uint32_t>(i);
      t.mu_[i] = -1;
      t.phi_[i] = static_cast<std::uint32_t>(i - 1);
      t.omega_[i] = 1;
      primes.push_back(static_cast<std::uint32_t>(i));
    }
    for (std::uint32_t p : primes) {
      const std::size_t m = i * p;
      if (p > t.spf_[i] || m >= size) break;
      t.spf_[m] = p;
      if (i % p == 0) {
        t.mu_[m] = 0;
        t.phi_[m] = t.phi_[i] * p;
        t.omega_[m] = t.omega_[i];
        break;
      }
      t.mu_[m] = static_cast<std::int8_t>(-t.mu_[i]);
      t.phi_[m] = t.phi_[i] * (p - 1);
      t.omega_[m] = static_cast<std::uint8_t>(t.omega_[i] + 1);
    }
  }

  std::int32_t running = 0;
  for (std::size_t i = 1; i < size; ++i) {
    running += t.mu_[i];
    t.mertens_[i] = running;
  }
  return t;
}

std::int64_t mertens(const ArithTables& tables, std::int64_t t) { return tables.mertens(t); }

std::int64_t mertens_dirichlet_identity(const ArithTables& tables, std::int64_t T) {
  if (T < 1 || T > tables.limit()) throw std::invalid_argument("mertens_dirichlet_identity: T out of range");
  // Blocks of d sharing the same quotient floor(T/d).
  std::int64_t total = 0;
  for (std::int64_t d = 1; d <= T;) {
    const std::int64_t quotient = T / d;
    const std::int64_t last = T / quotient;
    total += (last - d + 1) * tables.mertens(quotient);
    d = last + 1;
  }
  return total;
}

double f_beta(const ArithTables& tables, std::int64_t n, double beta) {
  if (beta < 0) throw std::invalid_argument("f_beta: beta must be >= 0");
  if (beta == 0) return static_cast<double>(f_zero(tables, n));
  double product = 1.0;
  for (std::int64_t p : tables.distinct_primes(n)) product *= 1.0 + std::pow(static_cast<double>(p), -beta);
  return product;
}

std::int64_t f_zero(const ArithTables& tables, std::int64_t n) { return std::int64_t{1} << tables.omega(n); }

Fraction psi(const Fraction& x) { return x - Fraction(x.floor(), BigInt(1)) - Fraction(1, 2); }

Fraction dist_nearest_int(const Fraction& x) {
  const Fraction half(1, 2);
  const Fraction p = psi(x);
  const Fraction lo = half - p;
  const Fraction hi = half + p;
  return lo < hi ? lo : hi;
}

Fraction psi_mod(const BigInt& numer, const BigInt& denom) {
  if (denom <= 0) throw std::invalid_argument("psi_mod: denominator must be >= 1");
  if (numer < 0) throw std::invalid_argument("psi_mod: numerator must be >= 0");
  const BigInt r = numer % denom;
  return Fraction(BigInt(2 * r - denom), BigInt(2 * denom));
}

Fraction psi_mod(u128 numer, std::uint64_t denom) {
  if (denom == 0) throw std::invalid_argument("psi_mod: denominator must be >= 1");
  const auto r = static_cast<std::uint64_t>(numer % denom);
  // 2r - denom fits in a signed 65-bit range; build through BigInt to stay exact.
  BigInt r_big, d;
  mpz_set_ui(r_big.get_mpz_t(), r);
  mpz_set_ui(d.get_mpz_t(), denom);
  return Fraction(BigInt(2 * r_big - d), BigInt(2 * d));
}

double psi_real(double x) { return x - std::floor(x) - 0.5; }

}  // namespace fl
