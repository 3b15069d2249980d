#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "fl/fracsum.hpp"
#include "fl/lattice.hpp"
#include "fl/parallel.hpp"
#include "fl/phase.hpp"
#include "fl/sieve.hpp"

namespace fl {

struct FitPoint {
  double x = 0.0;
  double y = 0.0;
};

struct FitResult {
  double slope = 0.0;
  double intercept = 0.0;
  double max_abs_residual = 0.0;
  std::int64_t point_count = 0;
  std::int64_t dropped = 0;  // points with y == 0
};

/// Least squares of log y on log x. Points with y == 0 are dropped and
/// counted; negative coordinates or x == 0 throw. Needs >= 3 usable points.
FitResult loglog_fit(std::span<const FitPoint> points);

nlohmann::json to_json(const FitResult& fit);

struct NamedAlpha {
  std::string label;
  Alpha alpha;
  std::string family;  // rational, quadratic or random
};

/// The cap L of a min-sum series: a fixed integer or tied to N.
struct LengthRule {
  std::int64_t fixed = 0;  // 0 means "use N"
  std::string label() const { return fixed == 0 ? "N" : std::to_string(fixed); }
  std::int64_t at(std::int64_t N) const { return fixed == 0 ? N : fixed; }
};

struct ScanSpec {
  std::vector<std::int64_t> t_grid;
  std::vector<std::int64_t> n_grid;
  std::vector<int> ks;
  std::vector<std::int64_t> qs;
  std::vector<NamedAlpha> alphas;
  std::vector<LengthRule> lengths;
  std::vector<bool> offset_by_n;  // M = 0 (false) or M = N (true)
  std::vector<double> deltas;
  double epsilon = 0.05;
  std::uint64_t seed = 0;

  /// Throws std::invalid_argument if a grid is empty or not strictly increasing.
  void validate() const;
};

/// round(from * sqrt(2)^i) while <= to.
std::vector<std::int64_t> geometric_grid(std::int64_t from, std::int64_t to);
std::vector<std::int64_t> arithmetic_grid(std::int64_t from, std::int64_t to, std::int64_t step);

/// `count` values uniform in (0, 1) from a 64-bit Mersenne twister, using
/// the top 53 bits so the sequence is identical across platforms.
std::vector<double> seeded_uniform(std::uint64_t seed, std::size_t count);

/// The default grids: T = 100..1600 in sqrt 2 steps, N = 2^8..2^14,
/// k in {2, 3}, q in {1, 6, 30, 210}, alpha in {1/7, 2/11, golden, 1/sqrt 2}
/// plus eight seeded uniforms, L in {4, 64, N}, M in {0, N},
/// delta in {1/4, 1/16, 1/64}.
ScanSpec default_scan_spec(std::uint64_t seed);

// ---------------------------------------------------------------------------
// |E(T)| growth
// ---------------------------------------------------------------------------

struct ErrorGrowthRow {
  LatticeCountApprox approx;
  std::optional<Fraction> exact_error;  // filled for T <= exact limit
  double relative_gap = 0.0;            // | |E| float - |E| exact | / |E| exact
};

struct ErrorGrowthScan {
  std::vector<ErrorGrowthRow> rows;
  FitResult fit;
  double max_relative_gap = 0.0;
};

inline constexpr std::int64_t kExactCrossCheckLimit = 100;

ErrorGrowthScan error_growth_scan(const ArithTables& tables, std::span<const std::int64_t> t_grid,
                                  const Executor& exec);
void write_csv(std::ostream& out, const ErrorGrowthScan& scan);

// ---------------------------------------------------------------------------
// Mertens envelope
// ---------------------------------------------------------------------------

struct MertensEnvelopeRow {
  std::int64_t t = 0;
  std::int64_t mertens = 0;
  double normalized = 0.0;  // |M(t)| / sqrt t
  double rho = 0.0;         // exp(sqrt(log t) (log log t)^{5/2}), o(1) taken as 0
};

/// Rejects t < 16.
std::vector<MertensEnvelopeRow> mertens_envelope_scan(const ArithTables& tables, std::span<const std::int64_t> t_grid);
double rho_envelope(double t);
void write_csv(std::ostream& out, const std::vector<MertensEnvelopeRow>& rows);

// ---------------------------------------------------------------------------
// Bound ratios
// ---------------------------------------------------------------------------

struct BoundRow {
  std::size_t series = 0;
  BoundReport report;
};

struct SeriesSummary {
  std::string name;
  FitResult fit;
  double max_ratio = 0.0;
  bool fit_ok = false;  // false when fewer than 3 positive ratios
};

struct BoundScan {
  std::string kind;  // prop31, lemma33 or rcount
  std::vector<BoundRow> rows;
  std::vector<SeriesSummary> series;
  /// Same fits with alpha pooled by family: at each N the largest ratio over
  /// the family, i.e. the implied constant uniform in alpha.
  std::vector<SeriesSummary> families;

  /// Largest fitted slope over series that produced a fit.
  double max_slope() const;
};

/// |psi_sum| / prop31_rhs per (k, q, alpha) series over the N grid.
BoundScan prop31_scan(const ArithTables& tables, const ScanSpec& spec, const Executor& exec);
/// min_sum / lemma33_rhs per (alpha, M rule, L rule) series.
BoundScan lemma33_scan(const ScanSpec& spec, const Executor& exec);
/// count_near_integers / envelope per (alpha, delta) series, M = 0.
BoundScan rcount_scan(const ScanSpec& spec, const Executor& exec);

void write_csv(std::ostream& out, const BoundScan& scan);

/// Summary document with keys fits, max_ratios, residuals, seed, grid.
nlohmann::json summary_json(const BoundScan& scan, const ScanSpec& spec);
nlohmann::json summary_json(const ErrorGrowthScan& scan, std::span<const std::int64_t> t_grid, std::uint64_t seed);

/// Fixed-format number rendering used by every CSV writer.
std::string format_double(double x);
std::string format_long_double(long double x);

}  // namespace fl
