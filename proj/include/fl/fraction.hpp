#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace fl {

using BigInt = mpz_class;

/// Exact rational number, always stored in lowest terms with a positive
/// denominator. Thin value wrapper over GMP's mpq_class.
class Fraction {
 public:
  Fraction() = default;
  Fraction(std::int64_t value);  // NOLINT(google-explicit-constructor)
  Fraction(std::int64_t num, std::int64_t den);
  Fraction(const BigInt& num, const BigInt& den);
  explicit Fraction(const mpq_class& value);

  BigInt num() const { return value_.get_num(); }
  BigInt den() const { return value_.get_den(); }
  const mpq_class& raw() const { return value_; }

  bool is_integer() const { return value_.get_den() == 1; }
  BigInt floor() const;
  BigInt ceil() const;
  Fraction abs() const;
  double to_double() const { return value_.get_d(); }
  long double to_long_double() const;

  /// "p/q", or "p" when the denominator is 1.
  std::string to_string() const;

  /// Accepts "p/q", an integer, or a terminating decimal such as "-0.125".
  /// Throws std::invalid_argument on anything else.
  static Fraction parse(std::string_view text);

  Fraction& operator+=(const Fraction& rhs);
  Fraction& operator-=(const Fraction& rhs);
  Fraction& operator*=(const Fraction& rhs);
  Fraction& operator/=(const Fraction& rhs);

  friend Fraction operator+(Fraction lhs, const Fraction& rhs) { return lhs += rhs; }
  friend Fraction operator-(Fraction lhs, const Fraction& rhs) { return lhs -= rhs; }
  friend Fraction operator*(Fraction lhs, const Fraction& rhs) { return lhs *= rhs; }
  friend Fraction operator/(Fraction lhs, const Fraction& rhs) { return lhs /= rhs; }
  Fraction operator-() const;

  friend bool operator==(const Fraction& a, const Fraction& b) { return cmp(a.value_, b.value_) == 0; }
  friend std::strong_ordering operator<=>(const Fraction& a, const Fraction& b) {
    const int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  mpq_class value_{0};
};

std::string to_string(const BigInt& value);

}  // namespace fl
