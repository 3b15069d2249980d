#include "fl/phase.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace fl {

namespace {

constexpr int kPhaseBits = 256;
constexpr u128 kMaxCoefficient = static_cast<u128>(1) << 74;

RealAlpha split(const mpf_class& x) {
  // get_d truncates; renormalising makes hi the nearest double.
  const double head = x.get_d();
  const mpf_class rest = x - mpf_class(head, kPhaseBits);
  const double tail = rest.get_d();
  const double hi = head + tail;
  return {hi, tail - (hi - head)};
}

/// frac(c * x) for a nonnegative double x, computed exactly as c * m * 2^e.
long double frac_mul_dyadic(u128 c, double x) {
  if (x == 0.0 || c == 0) return 0.0L;
  int exponent = 0;
  const double mantissa = std::frexp(x, &exponent);
  const auto m = static_cast<std::uint64_t>(std::ldexp(mantissa, 53));
  const int shift = 53 - exponent;  // x = m * 2^-shift
  if (shift <= 0) return 0.0L;
  const u128 product = c * m;  // c < 2^74 and m < 2^53, so no wrap
  if (shift >= 128) return std::ldexp(to_long_double(static_cast<i128>(product)), -shift);
  const u128 mask = (static_cast<u128>(1) << shift) - 1;
  const u128 rem = product & mask;
  const auto hi = static_cast<std::uint64_t>(rem >> 64);
  const auto lo = static_cast<std::uint64_t>(rem);
  const long double value = static_cast<long double>(hi) * 18446744073709551616.0L + static_cast<long double>(lo);
  return std::ldexp(value, -shift);
}

long double frac_mul_signed(u128 c, double x) {
  if (x >= 0) return frac_mul_dyadic(c, x);
  const long double f = frac_mul_dyadic(c, -x);
  return f == 0.0L ? 0.0L : 1.0L - f;
}

}  // namespace

RealAlpha RealAlpha::from_fraction(const Fraction& x) {
  mpf_class v(0, kPhaseBits);
  v = mpf_class(x.num(), kPhaseBits) / mpf_class(x.den(), kPhaseBits);
  return split(v);
}

RealAlpha RealAlpha::parse_decimal(std::string_view text) {
  mpf_class v(0, kPhaseBits);
  if (v.set_str(std::string(text), 10) != 0)
    throw std::invalid_argument("not a real number: '" + std::string(text) + "'");
  return split(v);
}

RealAlpha RealAlpha::golden_fraction() {
  mpf_class five(5, kPhaseBits);
  mpf_class v(0, kPhaseBits);
  v = (sqrt(five) - 1) / 2;
  return split(v);
}

RealAlpha RealAlpha::inv_sqrt2() {
  mpf_class two(2, kPhaseBits);
  mpf_class v(0, kPhaseBits);
  v = 1 / sqrt(two);
  return split(v);
}

double alpha_value(const Alpha& alpha) {
  if (const auto* f = std::get_if<Fraction>(&alpha)) return f->to_double();
  return std::get<RealAlpha>(alpha).value();
}

bool alpha_is_exact(const Alpha& alpha) { return std::holds_alternative<Fraction>(alpha); }

std::string alpha_label(const Alpha& alpha) {
  if (const auto* f = std::get_if<Fraction>(&alpha)) return f->to_string();
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", std::get<RealAlpha>(alpha).value());
  return buf;
}

Alpha parse_alpha(std::string_view text, bool exact) {
  if (text == "golden") return RealAlpha::golden_fraction();
  if (text == "invsqrt2") return RealAlpha::inv_sqrt2();
  if (text.find('/') != std::string_view::npos) return Fraction::parse(text);
  const bool plain_decimal = text.find_first_of("eE") == std::string_view::npos;
  if (exact) {
    if (!plain_decimal)
      throw std::invalid_argument("exponent notation is not accepted for exact alpha: '" + std::string(text) + "'");
    return Fraction::parse(text);
  }
  if (text.find('.') == std::string_view::npos && plain_decimal) return Fraction::parse(text);
  return RealAlpha::parse_decimal(text);
}

std::uint64_t residue_mul(u128 c, std::uint64_t p, std::uint64_t q) {
  if (q == 0) throw std::invalid_argument("residue_mul: zero modulus");
  const auto c_mod = static_cast<std::uint64_t>(c % q);
  return mulmod(c_mod, p % q, q);
}

double frac_mul(u128 c, const RealAlpha& alpha) {
  if (c >= kMaxCoefficient) throw std::overflow_error("frac_mul: coefficient exceeds 2^74");
  long double f = frac_mul_signed(c, alpha.hi) + frac_mul_signed(c, alpha.lo);
  if (f >= 1.0L) f -= 1.0L;
  auto out = static_cast<double>(f);
  if (out >= 1.0) out = 0.0;  // rounding up to 1 wraps to 0
  return out;
}

double frac_mul(u128 c, const Alpha& alpha) {
  if (const auto* f = std::get_if<Fraction>(&alpha)) {
    const BigInt& num = f->num();
    const BigInt& den = f->den();
    if (num >= 0 && mpz_fits_ulong_p(num.get_mpz_t()) && mpz_fits_ulong_p(den.get_mpz_t()) &&
        den < (BigInt(1) << 63)) {
      const std::uint64_t q = den.get_ui();
      const std::uint64_t r = residue_mul(c, num.get_ui(), q);
      return static_cast<double>(static_cast<long double>(r) / static_cast<long double>(q));
    }
    BigInt c_big;
    mpz_import(c_big.get_mpz_t(), 1, 1, sizeof(u128), 0, 0, &c);
    BigInt r;
    mpz_fdiv_r(r.get_mpz_t(), BigInt(c_big * num).get_mpz_t(), den.get_mpz_t());
    return mpq_class(r, den).get_d();
  }
  return frac_mul(c, std::get<RealAlpha>(alpha));
}

}  // namespace fl
