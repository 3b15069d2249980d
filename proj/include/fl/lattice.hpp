#pragma once

#include <cstdint>

#include "fl/fraction.hpp"
#include "fl/parallel.hpp"
#include "fl/sieve.hpp"

namespace fl {

/// #(F(T) ∩ [y, 1]) for 0 <= y <= 1. The right endpoint 1 is never a Farey
/// fraction; the left endpoint counts when y reduces to a member of F(T).
std::int64_t count_interval(const ArithTables& tables, std::int64_t T, const Fraction& y);

/// C(T) by double enumeration: for every a/b in I(T), count Farey fractions
/// in [1 - a^2/b^2, 1]. Quadratic in #F(T).
std::int64_t c_naive(std::int64_t T);

/// C(T) via count_interval per element of I(T). Work over denominators is
/// spread across `exec`.
std::int64_t c_fast(const ArithTables& tables, std::int64_t T, const Executor& exec = Executor{});

/// Sigma(T) = - sum over a/b in I(T), d <= T of M(floor(T/d)) psi(d a^2 / b^2).
Fraction sigma_exact(const ArithTables& tables, std::int64_t T, const Executor& exec = Executor{});
long double sigma_approx(const ArithTables& tables, std::int64_t T, const Executor& exec = Executor{});

struct LatticeCountResult {
  std::int64_t order = 0;
  std::int64_t count = 0;         // C(T)
  std::int64_t farey_count = 0;   // F(T)
  Fraction second_moment;         // G(T)
  Fraction error;                 // E(T) = C - F G
  Fraction sigma;                 // Sigma(T)
  std::int64_t half_count = 0;    // #I(T)
  Fraction identity_residual;     // E - Sigma + #I/2, expected 0
};

/// All fields in exact arithmetic.
LatticeCountResult error_term(const ArithTables& tables, std::int64_t T, const Executor& exec = Executor{});

struct LatticeCountApprox {
  std::int64_t order = 0;
  std::int64_t count = 0;
  std::int64_t farey_count = 0;
  long double second_moment = 0;
  long double error = 0;
  long double sigma = 0;
  std::int64_t half_count = 0;
  long double identity_residual = 0;
};

/// C(T) stays exact; G, E and Sigma use compensated long double sums.
LatticeCountApprox error_term_approx(const ArithTables& tables, std::int64_t T, const Executor& exec = Executor{});

}  // namespace fl
