#include "fl/lattice.hpp"

#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "fl/farey.hpp"

namespace fl {

namespace {

constexpr std::int64_t kMaxOrder = 100'000;

void check_order(const ArithTables& tables, std::int64_t T, const char* what) {
  if (T < 1) throw std::invalid_argument(std::string(what) + ": order must be >= 1");
  if (T > tables.limit()) throw std::invalid_argument(std::string(what) + ": order exceeds table limit");
  if (T > kMaxOrder) throw std::invalid_argument(std::string(what) + ": order too large");
}

// #(F(T) ∩ [p/q, 1]) with 0 < p/q < 1 given unreduced, F(T) precomputed.
std::int64_t count_from(const ArithTables& tables, std::int64_t T, std::int64_t farey_count, std::int64_t p,
                        std::int64_t q) {
  const std::int64_t g = std::gcd(p, q);
  const bool member = q / g <= T;
  return farey_count - rank(tables, T, p, q) + (member ? 1 : 0);
}

// For each b <= T, the integer
//   N_b = sum over a in I_b, d <= T of M(floor(T/d)) (2 (d a^2 mod b^2) - b^2)
// so that Sigma(T) = - sum_b N_b / (2 b^2).
std::vector<i128> sigma_numerators(const ArithTables& tables, std::int64_t T, const Executor& exec) {
  std::vector<std::int64_t> weight(static_cast<std::size_t>(T) + 1);
  for (std::int64_t d = 1; d <= T; ++d) weight[static_cast<std::size_t>(d)] = tables.mertens(T / d);

  return exec.map(static_cast<std::size_t>(T), [&](std::size_t index) -> i128 {
    const auto b = static_cast<std::int64_t>(index) + 1;
    const std::int64_t modulus = b * b;
    i128 total = 0;
    auto add_numerator = [&](std::int64_t a) {
      const std::int64_t step = (a * a) % modulus;
      std::int64_t residue = 0;
      std::int64_t inner = 0;
      for (std::int64_t d = 1; d <= T; ++d) {
        residue += step;
        if (residue >= modulus) residue -= modulus;
        inner += weight[static_cast<std::size_t>(d)] * (2 * residue - modulus);
      }
      total += inner;
    };
    if (b == 1) {
      add_numerator(0);
    } else {
      for (std::int64_t a = 1; 2 * a <= b; ++a)
        if (std::gcd(a, b) == 1) add_numerator(a);
    }
    return total;
  });
}

}  // namespace

std::int64_t count_interval(const ArithTables& tables, std::int64_t T, const Fraction& y) {
  if (y < Fraction(0) || y > Fraction(1)) throw std::invalid_argument("count_interval: y must lie in [0, 1]");
  if (y == Fraction(1)) return 0;
  const std::int64_t total = farey_cardinality(tables, T);
  const bool member = y.den() <= T;
  return total - rank(tables, T, y) + (member ? 1 : 0);
}

std::int64_t c_naive(std::int64_t T) {
  const std::vector<FareyTerm> all = enumerate(T);
  std::int64_t total = 0;
  for (const FareyTerm& x : all) {
    if (2 * x.num > x.den) break;  // enumeration is increasing; past 1/2
    const i128 bb = static_cast<i128>(x.den) * x.den;
    const i128 lower = bb - static_cast<i128>(x.num) * x.num;  // y >= lower / bb
    for (const FareyTerm& y : all)
      if (static_cast<i128>(y.num) * bb >= lower * y.den) ++total;
  }
  return total;
}

std::int64_t c_fast(const ArithTables& tables, std::int64_t T, const Executor& exec) {
  check_order(tables, T, "c_fast");
  const std::int64_t farey_count = farey_cardinality(tables, T);
  // b = 1 contributes a = 0 with the empty interval [1, 1].
  const auto per_den = exec.map(static_cast<std::size_t>(T > 1 ? T - 1 : 0), [&](std::size_t index) {
    const auto b = static_cast<std::int64_t>(index) + 2;
    const std::int64_t bb = b * b;
    std::int64_t subtotal = 0;
    for (std::int64_t a = 1; 2 * a <= b; ++a)
      if (std::gcd(a, b) == 1) subtotal += count_from(tables, T, farey_count, bb - a * a, bb);
    return subtotal;
  });
  return std::accumulate(per_den.begin(), per_den.end(), std::int64_t{0});
}

Fraction sigma_exact(const ArithTables& tables, std::int64_t T, const Executor& exec) {
  check_order(tables, T, "sigma_exact");
  const std::vector<i128> numerators = sigma_numerators(tables, T, exec);
  mpq_class total = 0;
  for (std::int64_t b = 1; b <= T; ++b) {
    const i128 n = numerators[static_cast<std::size_t>(b - 1)];
    if (n == 0) continue;
    const BigInt num(to_string(n), 10);
    BigInt den(static_cast<long>(b));
    den = 2 * den * den;
    total -= mpq_class(num, den);
  }
  return Fraction(total);
}

long double sigma_approx(const ArithTables& tables, std::int64_t T, const Executor& exec) {
  check_order(tables, T, "sigma_approx");
  const std::vector<i128> numerators = sigma_numerators(tables, T, exec);
  CompensatedSum<long double> total;
  for (std::int64_t b = 1; b <= T; ++b) {
    const long double bb = static_cast<long double>(b) * static_cast<long double>(b);
    total.add(-to_long_double(numerators[static_cast<std::size_t>(b - 1)]) / (2.0L * bb));
  }
  return total.value();
}

LatticeCountResult error_term(const ArithTables& tables, std::int64_t T, const Executor& exec) {
  check_order(tables, T, "error_term");
  LatticeCountResult r;
  r.order = T;
  r.count = c_fast(tables, T, exec);
  r.farey_count = farey_cardinality(tables, T);
  r.second_moment = second_moment_half(T);
  r.error = Fraction(r.count) - Fraction(r.farey_count) * r.second_moment;
  r.sigma = sigma_exact(tables, T, exec);
  r.half_count = half_cardinality(tables, T);
  r.identity_residual = r.error - r.sigma + Fraction(r.half_count, 2);
  return r;
}

LatticeCountApprox error_term_approx(const ArithTables& tables, std::int64_t T, const Executor& exec) {
  check_order(tables, T, "error_term_approx");
  LatticeCountApprox r;
  r.order = T;
  r.count = c_fast(tables, T, exec);
  r.farey_count = farey_cardinality(tables, T);
  r.second_moment = second_moment_half_approx(T);
  r.error = static_cast<long double>(r.count) - static_cast<long double>(r.farey_count) * r.second_moment;
  r.sigma = sigma_approx(tables, T, exec);
  r.half_count = half_cardinality(tables, T);
  r.identity_residual = r.error - r.sigma + static_cast<long double>(r.half_count) / 2.0L;
  return r;
}

}  // namespace fl
