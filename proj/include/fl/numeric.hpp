#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace fl {

using i128 = __int128;
using u128 = unsigned __int128;

/// Neumaier-compensated running sum.
template <class Real>
class CompensatedSum {
 public:
  void add(Real x) {
    const Real t = sum_ + x;
    if (std::fabs(sum_) >= std::fabs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }
  CompensatedSum& operator+=(Real x) {
    add(x);
    return *this;
  }
  Real value() const { return sum_ + comp_; }

 private:
  Real sum_{0};
  Real comp_{0};
};

std::string to_string(i128 value);
long double to_long_double(i128 value);

/// a * b with overflow detection; throws std::overflow_error naming `what`.
inline u128 checked_mul(u128 a, u128 b, const char* what) {
  u128 out;
  if (__builtin_mul_overflow(a, b, &out)) throw std::overflow_error(std::string("128-bit overflow in ") + what);
  return out;
}

inline i128 checked_mul(i128 a, i128 b, const char* what) {
  i128 out;
  if (__builtin_mul_overflow(a, b, &out)) throw std::overflow_error(std::string("128-bit overflow in ") + what);
  return out;
}

inline i128 checked_add(i128 a, i128 b, const char* what) {
  i128 out;
  if (__builtin_add_overflow(a, b, &out)) throw std::overflow_error(std::string("128-bit overflow in ") + what);
  return out;
}

/// (a * b) mod m for m < 2^64.
inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

inline std::uint64_t powmod(std::uint64_t base, unsigned exp, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1u) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return result;
}

}  // namespace fl
