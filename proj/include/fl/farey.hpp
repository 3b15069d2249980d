#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "fl/fraction.hpp"
#include "fl/numeric.hpp"
#include "fl/sieve.hpp"

namespace fl {

/// Reduced fraction num/den with small integer parts.
struct FareyTerm {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Fraction to_fraction() const { return Fraction(num, den); }
  friend bool operator==(const FareyTerm&, const FareyTerm&) = default;
};

/// In-order traversal of the Farey fractions a/b with 0 <= a < b <= T.
/// Starts at 0/1 and ends at (T-1)/T; 1/1 is never produced.
class FareySequence {
 public:
  explicit FareySequence(std::int64_t order);

  std::int64_t order() const { return order_; }
  std::optional<FareyTerm> next();

 private:
  std::int64_t order_;
  FareyTerm prev_{0, 1};
  FareyTerm cur_{0, 1};
  bool started_ = false;
  bool done_ = false;
};

std::vector<FareyTerm> enumerate(std::int64_t order);

/// #F(T) = sum over b <= T of phi(b).
std::int64_t farey_cardinality(const ArithTables& tables, std::int64_t T);

/// #I(T), the Farey fractions in [0, 1/2] (0/1 and 1/2 included).
std::int64_t half_cardinality(const ArithTables& tables, std::int64_t T);

/// G(T): exact sum of xi^2 over Farey fractions xi <= 1/2.
Fraction second_moment_half(std::int64_t T);
/// Compensated floating twin of second_moment_half.
long double second_moment_half_approx(std::int64_t T);

struct FareyStats {
  std::int64_t order = 0;
  std::int64_t cardinality = 0;
  std::int64_t half_count = 0;
  Fraction second_moment;
};

FareyStats farey_stats(const ArithTables& tables, std::int64_t T);

/// Sum of floor(p*m/q) for m = 1..K, in O(log max(p, q)) steps.
std::int64_t floor_sum(std::int64_t K, std::int64_t p, std::int64_t q);
i128 floor_sum_wide(std::int64_t K, std::int64_t p, std::int64_t q);
BigInt floor_sum(const BigInt& K, const BigInt& p, const BigInt& q);

/// #{xi in F(T) : xi <= x} for 0 <= x < 1, by Möbius inversion over the
/// denominators and floor sums grouped by floor(T/d).
std::int64_t rank(const ArithTables& tables, std::int64_t T, const Fraction& x);
/// Same count for x = p/q given as machine integers (not necessarily reduced).
std::int64_t rank(const ArithTables& tables, std::int64_t T, std::int64_t p, std::int64_t q);

}  // namespace fl
