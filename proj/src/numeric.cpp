#include "fl/numeric.hpp"

#include <algorithm>

namespace fl {

std::string to_string(i128 value) {
  if (value == 0) return "0";
  const bool negative = value < 0;
  u128 mag = negative ? static_cast<u128>(-(value + 1)) + 1 : static_cast<u128>(value);
  std::string digits;
  while (mag != 0) {
    digits.push_back(static_cast<char>('0' + static_cast<int>(mag % 10)));
    mag /= 10;
  }
  if (negative) digits.push_back('-');
  std::reverse(digits.begin(), digits.end());
  return digits;
}

long double to_long_double(i128 value) {
  const bool negative = value < 0;
  const u128 mag = negative ? static_cast<u128>(-(value + 1)) + 1 : static_cast<u128>(value);
  const auto hi = static_cast<std::uint64_t>(mag >> 64);
  const auto lo = static_cast<std::uint64_t>(mag);
  const long double out = static_cast<long double>(hi) * 18446744073709551616.0L + static_cast<long double>(lo);
  return negative ? -out : out;
}

}  // namespace fl
