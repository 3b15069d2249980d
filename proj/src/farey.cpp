#include "fl/farey.hpp"

#include <limits>
#include <utility>
#include <numeric>
#include <stdexcept>
#include <string>

namespace fl {

namespace {

void require_order(std::int64_t T, const char* what) {
  if (T < 1) throw std::invalid_argument(std::string(what) + ": order must be >= 1");
}

// Sum of floor((a*i + b) / m) for i = 0..n-1, all arguments nonnegative.
i128 floor_sum_core(i128 n, i128 m, i128 a, i128 b) {
  i128 ans = 0;
  for (;;) {
    if (a >= m) {
      const i128 pairs = checked_mul(n, n - 1, "floor_sum") / 2;
      ans = checked_add(ans, checked_mul(pairs, a / m, "floor_sum"), "floor_sum");
      a %= m;
    }
    if (b >= m) {
      ans = checked_add(ans, checked_mul(n, b / m, "floor_sum"), "floor_sum");
      b %= m;
    }
    const i128 y_max = checked_add(checked_mul(a, n, "floor_sum"), b, "floor_sum");
    if (y_max < m) break;
    n = y_max / m;
    b = y_max % m;
    std::swap(m, a);
  }
  return ans;
}

BigInt floor_sum_core(BigInt n, BigInt m, BigInt a, BigInt b) {
  BigInt ans = 0;
  for (;;) {
    if (a >= m) {
      ans += (n * (n - 1) / 2) * (a / m);
      a %= m;
    }
    if (b >= m) {
      ans += n * (b / m);
      b %= m;
    }
    const BigInt y_max = a * n + b;
    if (y_max < m) break;
    n = y_max / m;
    b = y_max % m;
    std::swap(m, a);
  }
  return ans;
}

bool fits_i64(const BigInt& v) { return mpz_fits_slong_p(v.get_mpz_t()) != 0; }

}  // namespace

FareySequence::FareySequence(std::int64_t order) : order_(order) { require_order(order, "FareySequence"); }

std::optional<FareyTerm> FareySequence::next() {
  if (done_) return std::nullopt;
  if (!started_) {
    started_ = true;
    return cur_;
  }
  FareyTerm following;
  if (cur_.num == 0) {
    following = {1, order_};
  } else {
    const std::int64_t k = (order_ + prev_.den) / cur_.den;
    following = {k * cur_.num - prev_.num, k * cur_.den - prev_.den};
  }
  if (following.num >= following.den) {
    done_ = true;
    return std::nullopt;
  }
  prev_ = cur_;
  cur_ = following;
  return cur_;
}

std::vector<FareyTerm> enumerate(std::int64_t order) {
  FareySequence seq(order);
  std::vector<FareyTerm> out;
  while (auto term = seq.next()) out.push_back(*term);
  return out;
}

std::int64_t farey_cardinality(const ArithTables& tables, std::int64_t T) {
  require_order(T, "farey_cardinality");
  if (T > tables.limit()) throw std::invalid_argument("farey_cardinality: order exceeds table limit");
  std::int64_t total = 0;
  for (std::int64_t b = 1; b <= T; ++b) total += tables.phi(b);
  return total;
}

std::int64_t half_cardinality(const ArithTables& tables, std::int64_t T) {
  require_order(T, "half_cardinality");
  if (T > tables.limit()) throw std::invalid_argument("half_cardinality: order exceeds table limit");
  // 0/1, then 1/2, then phi(b)/2 numerators a < b/2 for each b >= 3.
  std::int64_t total = 1;
  if (T >= 2) total += 1;
  for (std::int64_t b = 3; b <= T; ++b) total += tables.phi(b) / 2;
  return total;
}

Fraction second_moment_half(std::int64_t T) {
  require_order(T, "second_moment_half");
  mpq_class total = 0;
  for (std::int64_t b = 2; b <= T; ++b) {
    std::int64_t squares = 0;
    for (std::int64_t a = 1; 2 * a <= b; ++a)
      if (std::gcd(a, b) == 1) squares += a * a;
    BigInt b_big(static_cast<long>(b));
    total += mpq_class(BigInt(static_cast<long>(squares)), b_big * b_big);
  }
  return Fraction(total);
}

long double second_moment_half_approx(std::int64_t T) {
  require_order(T, "second_moment_half_approx");
  CompensatedSum<long double> total;
  for (std::int64_t b = 2; b <= T; ++b) {
    i128 squares = 0;
    for (std::int64_t a = 1; 2 * a <= b; ++a)
      if (std::gcd(a, b) == 1) squares += static_cast<i128>(a) * a;
    const long double bb = static_cast<long double>(b) * static_cast<long double>(b);
    total.add(to_long_double(squares) / bb);
  }
  return total.value();
}

FareyStats farey_stats(const ArithTables& tables, std::int64_t T) {
  return {T, farey_cardinality(tables, T), half_cardinality(tables, T), second_moment_half(T)};
}

i128 floor_sum_wide(std::int64_t K, std::int64_t p, std::int64_t q) {
  if (q == 0) throw std::invalid_argument("floor_sum: q must be >= 1");
  if (K < 0 || p < 0 || q < 0) throw std::invalid_argument("floor_sum: arguments must be nonnegative");
  if (K == 0 || p == 0) return 0;
  return floor_sum_core(static_cast<i128>(K) + 1, q, p, 0);
}

std::int64_t floor_sum(std::int64_t K, std::int64_t p, std::int64_t q) {
  const i128 wide = floor_sum_wide(K, p, q);
  if (wide > std::numeric_limits<std::int64_t>::max()) throw std::overflow_error("floor_sum: result exceeds int64");
  return static_cast<std::int64_t>(wide);
}

BigInt floor_sum(const BigInt& K, const BigInt& p, const BigInt& q) {
  if (q == 0) throw std::invalid_argument("floor_sum: q must be >= 1");
  if (K < 0 || p < 0 || q < 0) throw std::invalid_argument("floor_sum: arguments must be nonnegative");
  if (K == 0 || p == 0) return 0;
  return floor_sum_core(K + 1, q, p, 0);
}

std::int64_t rank(const ArithTables& tables, std::int64_t T, std::int64_t p, std::int64_t q) {
  require_order(T, "rank");
  if (T > tables.limit()) throw std::invalid_argument("rank: order exceeds table limit");
  if (q < 1 || p < 0 || p >= q) throw std::invalid_argument("rank: x must lie in [0, 1)");
  i128 total = 1;  // 0/1
  for (std::int64_t d = 1; d <= T;) {
    const std::int64_t quotient = T / d;
    const std::int64_t last = T / quotient;
    const std::int64_t weight = tables.mertens(last) - (d > 1 ? tables.mertens(d - 1) : 0);
    if (weight != 0)
      total = checked_add(total, checked_mul(static_cast<i128>(weight), floor_sum_wide(quotient, p, q), "rank"), "rank");
    d = last + 1;
  }
  if (total > std::numeric_limits<std::int64_t>::max()) throw std::overflow_error("rank: result exceeds int64");
  return static_cast<std::int64_t>(total);
}

std::int64_t rank(const ArithTables& tables, std::int64_t T, const Fraction& x) {
  if (x < Fraction(0) || x >= Fraction(1)) throw std::invalid_argument("rank: x must lie in [0, 1)");
  const BigInt p = x.num();
  const BigInt q = x.den();
  if (fits_i64(p) && fits_i64(q)) return rank(tables, T, p.get_si(), q.get_si());

  require_order(T, "rank");
  if (T > tables.limit()) throw std::invalid_argument("rank: order exceeds table limit");
  BigInt total = 1;
  for (std::int64_t d = 1; d <= T;) {
    const std::int64_t quotient = T / d;
    const std::int64_t last = T / quotient;
    const std::int64_t weight = tables.mertens(last) - (d > 1 ? tables.mertens(d - 1) : 0);
    if (weight != 0) total += BigInt(static_cast<long>(weight)) * floor_sum(BigInt(static_cast<long>(quotient)), p, q);
    d = last + 1;
  }
  if (!fits_i64(total)) throw std::overflow_error("rank: result exceeds int64");
  return total.get_si();
}

}  // namespace fl
