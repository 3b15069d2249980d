#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fl/fraction.hpp"
#include "fl/phase.hpp"
#include "fl/sieve.hpp"

namespace fl {

struct PsiSumParams {
  std::int64_t N = 1;
  int k = 2;
  Alpha alpha = Fraction(1, 2);
  std::int64_t q = 1;
  double epsilon = 0.05;

  /// max(alpha, 1/alpha), always >= 1.
  double kappa() const;
  /// Throws std::invalid_argument unless N >= 1, k >= 2, q >= 1, alpha > 0
  /// and 0 < epsilon <= 1/2.
  void validate() const;
};

struct PsiSumResult {
  bool exact = false;
  std::optional<Fraction> exact_value;  // set in exact mode
  double value = 0.0;                   // always set
  std::int64_t term_count = 0;          // n in (N, 2N] coprime to q
};

/// Sum of psi(n^k alpha) over N < n <= 2N with gcd(n, q) = 1. Rational
/// alpha is summed exactly via residues n^k p mod den; real alpha uses the
/// compensated floating path with exact per-component phase reduction.
/// `tables` must cover q (its prime factors drive the coprimality filter).
PsiSumResult psi_sum(const ArithTables& tables, const PsiSumParams& params);

/// Floating evaluation regardless of alpha's representation.
PsiSumResult psi_sum_approx(const ArithTables& tables, const PsiSumParams& params);

struct NamedTerm {
  std::string name;
  double value = 0.0;
};

/// One bound instance: lhs against prefactor * (sum of terms).
struct BoundReport {
  std::vector<std::pair<std::string, std::string>> params;
  double lhs = 0.0;
  double prefactor = 1.0;
  std::vector<NamedTerm> terms;
  double rhs_total = 0.0;
  double ratio = 0.0;

  void set_lhs(double value);
  double term(std::string_view name) const;
};

/// (N kappa)^eps (N a^{2^{1-k}} F_{1-k 2^{1-k}}(q) + N^{1-2^{1-k}} F_{1-2^{1-k}}(q)
///                + N^{1-k 2^{1-k}} F_1(q) / a^{2^{1-k}}).
/// Terms are stored without the prefactor; rhs_total includes it.
BoundReport prop31_rhs(const ArithTables& tables, const PsiSumParams& params);

/// N a^{1/(2^k-1)} + N^{1-2^{1-k}} + N^{1-2^{1-k}-2^{4-2k}} a^{-2^{1-k}}.
BoundReport vdc_rhs(std::int64_t N, int k, double alpha);

struct MinSumParams {
  std::int64_t M = 0;
  std::int64_t N = 1;
  std::int64_t L = 4;
  Alpha alpha = Fraction(1, 2);

  void validate() const;
};

/// Sum of min(L, 1/||n alpha||) over M < n <= M + N; terms with
/// ||n alpha|| = 0 contribute L.
double min_sum(const MinSumParams& params);

/// L N alpha + (N + 1/alpha) log L + L.
BoundReport lemma33_rhs(const MinSumParams& params);

/// #{n in (M, M+N] : ||n alpha|| < delta}, 0 < delta <= 1/4.
std::int64_t count_near_integers(std::int64_t M, std::int64_t N, const Alpha& alpha, double delta);

/// Envelope N alpha + delta N + delta / alpha + 1 with the count as lhs.
BoundReport rcount_envelope(std::int64_t M, std::int64_t N, const Alpha& alpha, double delta);

/// |sum over N/d < n <= 2N/d of e(h n^k d^k alpha)|.
double weyl_exp_sum(std::int64_t N, int k, std::int64_t h, std::int64_t d, const Alpha& alpha);

}  // namespace fl
