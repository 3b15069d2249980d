#include "fl/fraction.hpp"

#include <cctype>
#include <stdexcept>

namespace fl {

namespace {

BigInt from_i64(std::int64_t v) {
  BigInt out;
  mpz_set_si(out.get_mpz_t(), static_cast<long>(v));
  return out;
}

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

BigInt parse_integer(std::string_view s, std::string_view whole) {
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) throw std::invalid_argument("not a rational number: '" + std::string(whole) + "'");
  BigInt v(std::string(s), 10);
  return negative ? BigInt(-v) : v;
}

}  // namespace

Fraction::Fraction(std::int64_t value) : value_(from_i64(value)) {}

Fraction::Fraction(std::int64_t num, std::int64_t den) : Fraction(from_i64(num), from_i64(den)) {}

Fraction::Fraction(const BigInt& num, const BigInt& den) {
  if (den == 0) throw std::invalid_argument("Fraction: zero denominator");
  value_ = mpq_class(num, den);
  value_.canonicalize();
}

Fraction::Fraction(const mpq_class& value) : value_(value) { value_.canonicalize(); }

BigInt Fraction::floor() const {
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), value_.get_num_mpz_t(), value_.get_den_mpz_t());
  return q;
}

BigInt Fraction::ceil() const {
  BigInt q;
  mpz_cdiv_q(q.get_mpz_t(), value_.get_num_mpz_t(), value_.get_den_mpz_t());
  return q;
}

Fraction Fraction::abs() const { return Fraction(mpq_class(::abs(value_))); }

long double Fraction::to_long_double() const {
  // Split off the integer part so the fractional remainder keeps full precision.
  const BigInt whole = floor();
  const mpq_class rem = value_ - mpq_class(whole);
  mpz_class scaled = rem.get_num() * (mpz_class(1) << 64) / rem.get_den();
  long double frac = static_cast<long double>(mpz_get_ui(scaled.get_mpz_t())) / 18446744073709551616.0L;
  return static_cast<long double>(whole.get_d()) + frac;
}

std::string Fraction::to_string() const {
  if (is_integer()) return value_.get_num().get_str();
  return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

Fraction Fraction::parse(std::string_view text) {
  const std::string_view whole = text;
  if (text.empty()) throw std::invalid_argument("empty rational");
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    const BigInt num = parse_integer(text.substr(0, slash), whole);
    std::string_view den_text = text.substr(slash + 1);
    if (!all_digits(den_text)) throw std::invalid_argument("bad denominator in '" + std::string(whole) + "'");
    const BigInt den(std::string(den_text), 10);
    if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(whole) + "'");
    return Fraction(num, den);
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view int_part = text.substr(0, dot);
    std::string_view frac_part = text.substr(dot + 1);
    bool negative = false;
    if (!int_part.empty() && (int_part.front() == '-' || int_part.front() == '+')) {
      negative = int_part.front() == '-';
      int_part.remove_prefix(1);
    }
    if ((int_part.empty() && frac_part.empty()) || (!int_part.empty() && !all_digits(int_part)) ||
        (!frac_part.empty() && !all_digits(frac_part)))
      throw std::invalid_argument("not a terminating decimal: '" + std::string(whole) + "'");
    const std::string digits = std::string(int_part) + std::string(frac_part);
    BigInt num(digits.empty() ? std::string("0") : digits, 10);
    BigInt den = 1;
    for (std::size_t i = 0; i < frac_part.size(); ++i) den *= 10;
    if (negative) num = -num;
    return Fraction(num, den);
  }
  return Fraction(parse_integer(text, whole), BigInt(1));
}

Fraction& Fraction::operator+=(const Fraction& rhs) {
  value_ += rhs.value_;
  return *this;
}

Fraction& Fraction::operator-=(const Fraction& rhs) {
  value_ -= rhs.value_;
  return *this;
}

Fraction& Fraction::operator*=(const Fraction& rhs) {
  value_ *= rhs.value_;
  return *this;
}

Fraction& Fraction::operator/=(const Fraction& rhs) {
  if (rhs.value_ == 0) throw std::invalid_argument("Fraction: division by zero");
  value_ /= rhs.value_;
  return *this;
}

Fraction Fraction::operator-() const { return Fraction(mpq_class(-value_)); }

std::string to_string(const BigInt& value) { return value.get_str(); }

}  // namespace fl
