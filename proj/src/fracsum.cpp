#include "fl/fracsum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fl {

namespace {

u128 checked_pow(u128 base, int exp) {
  u128 out = 1;
  for (int i = 0; i < exp; ++i) out = checked_mul(out, base, "power");
  return out;
}

bool coprime_to(std::int64_t n, const std::vector<std::int64_t>& primes) {
  return std::none_of(primes.begin(), primes.end(), [n](std::int64_t p) { return n % p == 0; });
}

bool alpha_positive(const Alpha& alpha) {
  if (const auto* f = std::get_if<Fraction>(&alpha)) return *f > Fraction(0);
  return std::get<RealAlpha>(alpha).value() > 0.0;
}

std::string format_real(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// N^{1-2^{1-k}}, shared by the Weyl-type and Van der Corput bounds so the two agree bit for bit.
double secondary_term(std::int64_t N, int k) {
  return std::pow(static_cast<double>(N), 1.0 - std::ldexp(1.0, 1 - k));
}

bool small_fraction(const Fraction& f, std::uint64_t& p, std::uint64_t& q) {
  const BigInt num = f.num();
  const BigInt den = f.den();
  if (num < 0 || !mpz_fits_ulong_p(num.get_mpz_t()) || den >= (BigInt(1) << 63)) return false;
  p = num.get_ui();
  q = den.get_ui();
  return true;
}

}  // namespace

double PsiSumParams::kappa() const {
  const double a = alpha_value(alpha);
  return std::max(a, 1.0 / a);
}

void PsiSumParams::validate() const {
  if (N < 1) throw std::invalid_argument("psi_sum: N must be >= 1");
  if (k < 2) throw std::invalid_argument("psi_sum: k must be >= 2");
  if (q < 1) throw std::invalid_argument("psi_sum: q must be >= 1");
  if (!alpha_positive(alpha)) throw std::invalid_argument("psi_sum: alpha must be > 0");
  if (!(epsilon > 0.0 && epsilon <= 0.5)) throw std::invalid_argument("psi_sum: epsilon must lie in (0, 1/2]");
}

PsiSumResult psi_sum(const ArithTables& tables, const PsiSumParams& params) {
  params.validate();
  const auto* frac = std::get_if<Fraction>(&params.alpha);
  if (frac == nullptr) return psi_sum_approx(tables, params);

  const std::vector<std::int64_t> primes = tables.distinct_primes(params.q);
  PsiSumResult result;
  result.exact = true;

  std::uint64_t p = 0, q = 0;
  if (small_fraction(*frac, p, q)) {
    // psi(n^k p / q) = r_n / q - 1/2 with r_n = n^k p mod q.
    u128 residue_total = 0;
    for (std::int64_t n = params.N + 1; n <= 2 * params.N; ++n) {
      if (!coprime_to(n, primes)) continue;
      const std::uint64_t r = mulmod(powmod(static_cast<std::uint64_t>(n), static_cast<unsigned>(params.k), q), p % q, q);
      residue_total += r;
      ++result.term_count;
    }
    BigInt total, den;
    mpz_import(total.get_mpz_t(), 1, 1, sizeof(u128), 0, 0, &residue_total);
    mpz_set_ui(den.get_mpz_t(), q);
    const BigInt count(static_cast<long>(result.term_count));
    result.exact_value = Fraction(BigInt(2 * total - count * den), BigInt(2 * den));
  } else {
    const BigInt num = frac->num();
    const BigInt den = frac->den();
    BigInt residue_total = 0;
    for (std::int64_t n = params.N + 1; n <= 2 * params.N; ++n) {
      if (!coprime_to(n, primes)) continue;
      BigInt r;
      const BigInt base(static_cast<long>(n));
      mpz_powm_ui(r.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(params.k), den.get_mpz_t());
      r = r * num;
      mpz_fdiv_r(r.get_mpz_t(), r.get_mpz_t(), den.get_mpz_t());
      residue_total += r;
      ++result.term_count;
    }
    const BigInt count(static_cast<long>(result.term_count));
    result.exact_value = Fraction(BigInt(2 * residue_total - count * den), BigInt(2 * den));
  }
  result.value = result.exact_value->to_double();
  return result;
}

PsiSumResult psi_sum_approx(const ArithTables& tables, const PsiSumParams& params) {
  params.validate();
  const std::vector<std::int64_t> primes = tables.distinct_primes(params.q);
  const RealAlpha alpha = std::holds_alternative<Fraction>(params.alpha)
                              ? RealAlpha::from_fraction(std::get<Fraction>(params.alpha))
                              : std::get<RealAlpha>(params.alpha);
  PsiSumResult result;
  CompensatedSum<double> total;
  for (std::int64_t n = params.N + 1; n <= 2 * params.N; ++n) {
    if (!coprime_to(n, primes)) continue;
    const u128 power = checked_pow(static_cast<u128>(n), params.k);
    total.add(frac_mul(power, alpha) - 0.5);
    ++result.term_count;
  }
  result.value = total.value();
  return result;
}

void BoundReport::set_lhs(double value) {
  lhs = value;
  ratio = rhs_total > 0.0 ? value / rhs_total : 0.0;
}

double BoundReport::term(std::string_view name) const {
  for (const auto& t : terms)
    if (t.name == name) return t.value;
  throw std::out_of_range("BoundReport: no term named '" + std::string(name) + "'");
}

namespace {

void finish(BoundReport& report) {
  double sum = 0.0;
  for (const auto& t : report.terms) sum += t.value;
  report.rhs_total = report.prefactor * sum;
  report.set_lhs(report.lhs);
}

}  // namespace

BoundReport prop31_rhs(const ArithTables& tables, const PsiSumParams& params) {
  params.validate();
  const double a = alpha_value(params.alpha);
  const double n = static_cast<double>(params.N);
  const double e = std::ldexp(1.0, 1 - params.k);  // 2^{1-k}
  const double kappa = params.kappa();

  BoundReport report;
  report.params = {{"N", std::to_string(params.N)},
                   {"k", std::to_string(params.k)},
                   {"alpha", alpha_label(params.alpha)},
                   {"q", std::to_string(params.q)},
                   {"epsilon", format_real(params.epsilon)},
                   {"kappa", format_real(kappa)}};
  report.prefactor = std::pow(n * kappa, params.epsilon);
  report.terms = {
      {"main", n * std::pow(a, e) * f_beta(tables, params.q, 1.0 - params.k * e)},
      {"secondary", secondary_term(params.N, params.k) * f_beta(tables, params.q, 1.0 - e)},
      {"tertiary", std::pow(n, 1.0 - params.k * e) * f_beta(tables, params.q, 1.0) / std::pow(a, e)},
  };
  finish(report);
  return report;
}

BoundReport vdc_rhs(std::int64_t N, int k, double alpha) {
  if (N < 1) throw std::invalid_argument("vdc_rhs: N must be >= 1");
  if (k < 2) throw std::invalid_argument("vdc_rhs: k must be >= 2");
  if (!(alpha > 0.0)) throw std::invalid_argument("vdc_rhs: alpha must be > 0");
  const double n = static_cast<double>(N);
  const double e = std::ldexp(1.0, 1 - k);
  const double main_exp = 1.0 / (std::ldexp(1.0, k) - 1.0);

  BoundReport report;
  report.params = {{"N", std::to_string(N)}, {"k", std::to_string(k)}, {"alpha", format_real(alpha)}};
  report.terms = {
      {"main", n * std::pow(alpha, main_exp)},
      {"secondary", secondary_term(N, k)},
      {"tertiary", std::pow(n, 1.0 - e - std::ldexp(1.0, 4 - 2 * k)) * std::pow(alpha, -e)},
  };
  finish(report);
  return report;
}

void MinSumParams::validate() const {
  if (M < 0) throw std::invalid_argument("min_sum: M must be >= 0");
  if (N < 1) throw std::invalid_argument("min_sum: N must be >= 1");
  if (L < 4) throw std::invalid_argument("min_sum: L must be >= 4");
  if (!alpha_positive(alpha)) throw std::invalid_argument("min_sum: alpha must be > 0");
}

double min_sum(const MinSumParams& params) {
  params.validate();
  const double cap = static_cast<double>(params.L);
  CompensatedSum<double> total;
  std::uint64_t p = 0, q = 0;
  if (const auto* frac = std::get_if<Fraction>(&params.alpha); frac && small_fraction(*frac, p, q)) {
    for (std::int64_t n = params.M + 1; n <= params.M + params.N; ++n) {
      const std::uint64_t r = residue_mul(static_cast<u128>(n), p, q);
      const std::uint64_t dist = std::min(r, q - r);  // ||n alpha|| = dist / q
      // min(L, q / dist), deciding the branch in integers.
      if (dist == 0 || static_cast<u128>(params.L) * dist <= q)
        total.add(cap);
      else
        total.add(static_cast<double>(static_cast<long double>(q) / static_cast<long double>(dist)));
    }
    return total.value();
  }
  for (std::int64_t n = params.M + 1; n <= params.M + params.N; ++n) {
    const double f = frac_mul(static_cast<u128>(n), params.alpha);
    const double dist = std::min(f, 1.0 - f);
    total.add(dist == 0.0 ? cap : std::min(cap, 1.0 / dist));
  }
  return total.value();
}

BoundReport lemma33_rhs(const MinSumParams& params) {
  params.validate();
  const double a = alpha_value(params.alpha);
  const double n = static_cast<double>(params.N);
  const double l = static_cast<double>(params.L);
  BoundReport report;
  report.params = {{"M", std::to_string(params.M)},
                   {"N", std::to_string(params.N)},
                   {"L", std::to_string(params.L)},
                   {"alpha", alpha_label(params.alpha)}};
  report.terms = {
      {"LNalpha", l * n * a},
      {"log", (n + 1.0 / a) * std::log(l)},
      {"L", l},
  };
  finish(report);
  return report;
}

std::int64_t count_near_integers(std::int64_t M, std::int64_t N, const Alpha& alpha, double delta) {
  if (!(delta > 0.0 && delta <= 0.25)) throw std::invalid_argument("count_near_integers: delta must lie in (0, 1/4]");
  if (M < 0 || N < 1) throw std::invalid_argument("count_near_integers: need M >= 0 and N >= 1");
  if (!alpha_positive(alpha)) throw std::invalid_argument("count_near_integers: alpha must be > 0");

  std::int64_t count = 0;
  std::uint64_t p = 0, q = 0;
  if (const auto* frac = std::get_if<Fraction>(&alpha); frac && small_fraction(*frac, p, q)) {
    // dist / q < delta  <=>  dist <= ceil(delta q) - 1, with delta taken exactly.
    mpq_class scaled(delta);
    scaled *= mpq_class(BigInt(static_cast<unsigned long>(q)));
    BigInt ceil_scaled;
    mpz_cdiv_q(ceil_scaled.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
    const std::uint64_t threshold = ceil_scaled.get_ui();  // > 0 since delta > 0
    for (std::int64_t n = M + 1; n <= M + N; ++n) {
      const std::uint64_t r = residue_mul(static_cast<u128>(n), p, q);
      if (std::min(r, q - r) < threshold) ++count;
    }
    return count;
  }
  for (std::int64_t n = M + 1; n <= M + N; ++n) {
    const double f = frac_mul(static_cast<u128>(n), alpha);
    if (std::min(f, 1.0 - f) < delta) ++count;
  }
  return count;
}

BoundReport rcount_envelope(std::int64_t M, std::int64_t N, const Alpha& alpha, double delta) {
  const std::int64_t count = count_near_integers(M, N, alpha, delta);
  const double a = alpha_value(alpha);
  const double n = static_cast<double>(N);
  BoundReport report;
  report.params = {{"M", std::to_string(M)},
                   {"N", std::to_string(N)},
                   {"alpha", alpha_label(alpha)},
                   {"delta", format_real(delta)}};
  report.terms = {
      {"Nalpha", n * a},
      {"deltaN", delta * n},
      {"delta_over_alpha", delta / a},
      {"one", 1.0},
  };
  report.lhs = static_cast<double>(count);
  finish(report);
  return report;
}

double weyl_exp_sum(std::int64_t N, int k, std::int64_t h, std::int64_t d, const Alpha& alpha) {
  if (N < 1 || k < 1 || h < 1 || d < 1) throw std::invalid_argument("weyl_exp_sum: N, k, h, d must be >= 1");
  const u128 scale = checked_mul(static_cast<u128>(h), checked_pow(static_cast<u128>(d), k), "weyl_exp_sum");
  CompensatedSum<double> re, im;
  for (std::int64_t n = N / d + 1; n <= (2 * N) / d; ++n) {
    const u128 c = checked_mul(scale, checked_pow(static_cast<u128>(n), k), "weyl_exp_sum");
    const double phase = 2.0 * std::numbers::pi * frac_mul(c, alpha);
    re.add(std::cos(phase));
    im.add(std::sin(phase));
  }
  return std::hypot(re.value(), im.value());
}

}  // namespace fl
