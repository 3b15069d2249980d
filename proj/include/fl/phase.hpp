#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>

#include "fl/fraction.hpp"
#include "fl/numeric.hpp"

namespace fl {

/// A positive real carried as an unevaluated pair hi + lo of doubles
/// (about 106 significant bits). Each component is a dyadic rational, so
/// c * hi and c * lo can be reduced mod 1 exactly for integer c.
struct RealAlpha {
  double hi = 0.0;
  double lo = 0.0;

  double value() const { return hi + lo; }

  static RealAlpha from_double(double x) { return {x, 0.0}; }
  static RealAlpha from_fraction(const Fraction& x);
  /// Decimal string such as "0.1" or "1.25e-3", rounded to hi + lo.
  static RealAlpha parse_decimal(std::string_view text);
  /// Fractional part of the golden ratio, (sqrt 5 - 1) / 2.
  static RealAlpha golden_fraction();
  /// 1 / sqrt 2.
  static RealAlpha inv_sqrt2();
};

/// Rational or real-valued alpha. Exactness guarantees hold only for the
/// Fraction alternative.
using Alpha = std::variant<Fraction, RealAlpha>;

double alpha_value(const Alpha& alpha);
bool alpha_is_exact(const Alpha& alpha);
std::string alpha_label(const Alpha& alpha);

/// Parses "p/q" as an exact Fraction. A decimal becomes a Fraction when
/// `exact` is set and a RealAlpha otherwise. The named constants "golden"
/// and "invsqrt2" are accepted as reals.
Alpha parse_alpha(std::string_view text, bool exact);

/// frac(c * alpha) in [0, 1). Exact when alpha is a Fraction; for RealAlpha
/// each component is reduced exactly and only the final addition rounds.
/// Throws std::overflow_error if c exceeds 2^74.
double frac_mul(u128 c, const Alpha& alpha);
double frac_mul(u128 c, const RealAlpha& alpha);

/// c * (p/q) mod 1 as the integer residue (c * p) mod q, for q < 2^63.
std::uint64_t residue_mul(u128 c, std::uint64_t p, std::uint64_t q);

}  // namespace fl
