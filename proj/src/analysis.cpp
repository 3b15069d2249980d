#include "fl/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <ostream>
#include <random>
#include <stdexcept>

namespace fl {

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string format_long_double(long double x) {
  char buf[80];
  std::snprintf(buf, sizeof buf, "%.21Lg", x);
  return buf;
}

FitResult loglog_fit(std::span<const FitPoint> points) {
  std::vector<std::pair<double, double>> logs;
  FitResult fit;
  for (const FitPoint& p : points) {
    if (!(p.x > 0.0) || p.y < 0.0 || !std::isfinite(p.x) || !std::isfinite(p.y))
      throw std::invalid_argument("loglog_fit: coordinates must be positive and finite");
    if (p.y == 0.0) {
      ++fit.dropped;
      continue;
    }
    logs.emplace_back(std::log(p.x), std::log(p.y));
  }
  if (logs.size() < 3) throw std::invalid_argument("loglog_fit: fewer than 3 usable points");

  const double n = static_cast<double>(logs.size());
  double mean_x = 0.0, mean_y = 0.0;
  for (auto [lx, ly] : logs) {
    mean_x += lx;
    mean_y += ly;
  }
  mean_x /= n;
  mean_y /= n;
  double sxx = 0.0, sxy = 0.0;
  for (auto [lx, ly] : logs) {
    sxx += (lx - mean_x) * (lx - mean_x);
    sxy += (lx - mean_x) * (ly - mean_y);
  }
  if (sxx == 0.0) throw std::invalid_argument("loglog_fit: all x values coincide");

  fit.slope = sxy / sxx;
  fit.intercept = mean_y - fit.slope * mean_x;
  fit.point_count = static_cast<std::int64_t>(logs.size());
  for (auto [lx, ly] : logs)
    fit.max_abs_residual = std::max(fit.max_abs_residual, std::fabs(ly - (fit.intercept + fit.slope * lx)));
  return fit;
}

nlohmann::json to_json(const FitResult& fit) {
  return {{"slope", fit.slope},
          {"intercept", fit.intercept},
          {"max_abs_residual", fit.max_abs_residual},
          {"point_count", fit.point_count},
          {"dropped", fit.dropped}};
}

namespace {

void require_increasing(const auto& grid, const char* name) {
  if (grid.empty()) throw std::invalid_argument(std::string("scan: empty ") + name);
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (!(grid[i - 1] < grid[i])) throw std::invalid_argument(std::string("scan: ") + name + " not strictly increasing");
}

}  // namespace

void ScanSpec::validate() const {
  require_increasing(n_grid, "N grid");
  if (!t_grid.empty()) require_increasing(t_grid, "T grid");
  if (ks.empty() || qs.empty() || alphas.empty()) throw std::invalid_argument("scan: empty k, q or alpha list");
  if (lengths.empty() || offset_by_n.empty() || deltas.empty())
    throw std::invalid_argument("scan: empty L, M or delta list");
}

std::vector<std::int64_t> geometric_grid(std::int64_t from, std::int64_t to) {
  if (from < 1 || to < from) throw std::invalid_argument("geometric_grid: need 1 <= from <= to");
  std::vector<std::int64_t> grid;
  for (int i = 0;; ++i) {
    const auto v = static_cast<std::int64_t>(std::llround(static_cast<double>(from) * std::pow(std::sqrt(2.0), i)));
    if (v > to) break;
    if (grid.empty() || v > grid.back()) grid.push_back(v);
  }
  return grid;
}

std::vector<std::int64_t> arithmetic_grid(std::int64_t from, std::int64_t to, std::int64_t step) {
  if (step < 1 || to < from) throw std::invalid_argument("arithmetic_grid: need step >= 1 and from <= to");
  std::vector<std::int64_t> grid;
  for (std::int64_t v = from; v <= to; v += step) grid.push_back(v);
  return grid;
}

std::vector<double> seeded_uniform(std::uint64_t seed, std::size_t count) {
  std::mt19937_64 engine(seed);
  std::vector<double> out;
  out.reserve(count);
  while (out.size() < count) {
    const std::uint64_t bits = engine() >> 11;
    if (bits == 0) continue;
    out.push_back(std::ldexp(static_cast<double>(bits), -53));
  }
  return out;
}

ScanSpec default_scan_spec(std::uint64_t seed) {
  ScanSpec spec;
  spec.t_grid = geometric_grid(100, 1600);
  for (int e = 8; e <= 14; ++e) spec.n_grid.push_back(std::int64_t{1} << e);
  spec.ks = {2, 3};
  spec.qs = {1, 6, 30, 210};
  spec.alphas = {{"1/7", Fraction(1, 7), "rational"},
                 {"2/11", Fraction(2, 11), "rational"},
                 {"golden", RealAlpha::golden_fraction(), "quadratic"},
                 {"invsqrt2", RealAlpha::inv_sqrt2(), "quadratic"}};
  const std::vector<double> uniforms = seeded_uniform(seed, 8);
  for (std::size_t i = 0; i < uniforms.size(); ++i)
    spec.alphas.push_back({"rand" + std::to_string(i), RealAlpha::from_double(uniforms[i]), "random"});
  spec.lengths = {{4}, {64}, {0}};
  spec.offset_by_n = {false, true};
  spec.deltas = {0.25, 0.0625, 0.015625};
  spec.seed = seed;
  return spec;
}

// ---------------------------------------------------------------------------

ErrorGrowthScan error_growth_scan(const ArithTables& tables, std::span<const std::int64_t> t_grid,
                                  const Executor& exec) {
  require_increasing(t_grid, "T grid");
  ErrorGrowthScan scan;
  std::vector<FitPoint> points;
  for (std::int64_t T : t_grid) {
    ErrorGrowthRow row;
    row.approx = error_term_approx(tables, T, exec);
    if (T <= kExactCrossCheckLimit) {
      row.exact_error = error_term(tables, T, exec).error;
      const long double exact_abs = std::fabs(row.exact_error->to_long_double());
      const long double approx_abs = std::fabs(row.approx.error);
      row.relative_gap = exact_abs == 0.0L ? static_cast<double>(approx_abs)
                                           : static_cast<double>(std::fabs(approx_abs - exact_abs) / exact_abs);
      scan.max_relative_gap = std::max(scan.max_relative_gap, row.relative_gap);
    }
    points.push_back({static_cast<double>(T), static_cast<double>(std::fabs(row.approx.error))});
    scan.rows.push_back(std::move(row));
  }
  if (points.size() >= 3) scan.fit = loglog_fit(points);
  return scan;
}

void write_csv(std::ostream& out, const ErrorGrowthScan& scan) {
  out << "T,C,F,G,E,absE,Sigma,Icount,residual,exact_E\n";
  for (const auto& row : scan.rows) {
    const auto& a = row.approx;
    out << a.order << ',' << a.count << ',' << a.farey_count << ',' << format_long_double(a.second_moment) << ','
        << format_long_double(a.error) << ',' << format_long_double(std::fabs(a.error)) << ','
        << format_long_double(a.sigma) << ',' << a.half_count << ',' << format_long_double(a.identity_residual)
        << ',' << (row.exact_error ? row.exact_error->to_string() : std::string()) << '\n';
  }
}

// ---------------------------------------------------------------------------

double rho_envelope(double t) {
  const double log_t = std::log(t);
  return std::exp(std::sqrt(log_t) * std::pow(std::log(log_t), 2.5));
}

std::vector<MertensEnvelopeRow> mertens_envelope_scan(const ArithTables& tables,
                                                      std::span<const std::int64_t> t_grid) {
  require_increasing(t_grid, "t grid");
  std::vector<MertensEnvelopeRow> rows;
  for (std::int64_t t : t_grid) {
    if (t < 16) throw std::invalid_argument("mertens_envelope_scan: t must be >= 16");
    MertensEnvelopeRow row;
    row.t = t;
    row.mertens = tables.mertens(t);
    row.normalized = std::fabs(static_cast<double>(row.mertens)) / std::sqrt(static_cast<double>(t));
    row.rho = rho_envelope(static_cast<double>(t));
    rows.push_back(row);
  }
  return rows;
}

void write_csv(std::ostream& out, const std::vector<MertensEnvelopeRow>& rows) {
  out << "t,M,absM_over_sqrt_t,rho_o1_zero\n";
  for (const auto& r : rows)
    out << r.t << ',' << r.mertens << ',' << format_double(r.normalized) << ',' << format_double(r.rho) << '\n';
}

// ---------------------------------------------------------------------------

double BoundScan::max_slope() const {
  double worst = -std::numeric_limits<double>::infinity();
  for (const auto& s : series)
    if (s.fit_ok) worst = std::max(worst, s.fit.slope);
  return worst;
}

namespace {

struct SeriesKey {
  std::string name;
  std::string family;
  std::function<BoundReport(std::int64_t N)> evaluate;
};

SeriesSummary summarize(std::string name, std::span<const std::int64_t> n_grid, const std::vector<double>& ratios) {
  SeriesSummary summary;
  summary.name = std::move(name);
  std::vector<FitPoint> points;
  for (std::size_t i = 0; i < n_grid.size(); ++i) {
    summary.max_ratio = std::max(summary.max_ratio, ratios[i]);
    points.push_back({static_cast<double>(n_grid[i]), ratios[i]});
  }
  const auto positive = std::count_if(points.begin(), points.end(), [](const FitPoint& p) { return p.y > 0; });
  if (positive >= 3) {
    summary.fit = loglog_fit(points);
    summary.fit_ok = true;
  }
  return summary;
}

BoundScan run_series(std::string kind, const std::vector<SeriesKey>& keys, std::span<const std::int64_t> n_grid,
                     const Executor& exec) {
  BoundScan scan;
  scan.kind = std::move(kind);
  const std::size_t per_series = n_grid.size();
  auto reports = exec.map(keys.size() * per_series, [&](std::size_t index) {
    return keys[index / per_series].evaluate(n_grid[index % per_series]);
  });
  std::vector<std::string> family_names;
  std::vector<std::vector<double>> family_max;
  for (std::size_t s = 0; s < keys.size(); ++s) {
    std::vector<double> ratios;
    for (std::size_t i = 0; i < per_series; ++i) {
      BoundReport& report = reports[s * per_series + i];
      ratios.push_back(report.ratio);
      scan.rows.push_back({s, std::move(report)});
    }
    scan.series.push_back(summarize(keys[s].name, n_grid, ratios));

    const auto it = std::find(family_names.begin(), family_names.end(), keys[s].family);
    if (it == family_names.end()) {
      family_names.push_back(keys[s].family);
      family_max.push_back(ratios);
    } else {
      auto& worst = family_max[static_cast<std::size_t>(it - family_names.begin())];
      for (std::size_t i = 0; i < per_series; ++i) worst[i] = std::max(worst[i], ratios[i]);
    }
  }
  for (std::size_t f = 0; f < family_names.size(); ++f)
    scan.families.push_back(summarize(family_names[f], n_grid, family_max[f]));
  return scan;
}

}  // namespace

BoundScan prop31_scan(const ArithTables& tables, const ScanSpec& spec, const Executor& exec) {
  spec.validate();
  std::vector<SeriesKey> keys;
  for (int k : spec.ks)
    for (std::int64_t q : spec.qs)
      for (const NamedAlpha& a : spec.alphas) {
        const std::string name = "prop31 k=" + std::to_string(k) + " q=" + std::to_string(q) + " alpha=" + a.label;
        const std::string family = "prop31 k=" + std::to_string(k) + " q=" + std::to_string(q) + " family=" + a.family;
        keys.push_back({name, family, [&tables, &spec, k, q, alpha = a.alpha](std::int64_t N) {
                          PsiSumParams params{N, k, alpha, q, spec.epsilon};
                          BoundReport report = prop31_rhs(tables, params);
                          report.set_lhs(std::fabs(psi_sum(tables, params).value));
                          return report;
                        }});
      }
  return run_series("prop31", keys, spec.n_grid, exec);
}

BoundScan lemma33_scan(const ScanSpec& spec, const Executor& exec) {
  spec.validate();
  std::vector<SeriesKey> keys;
  for (const NamedAlpha& a : spec.alphas)
    for (bool offset : spec.offset_by_n)
      for (const LengthRule& rule : spec.lengths) {
        const std::string name = "lemma33 alpha=" + a.label + " M=" + (offset ? "N" : "0") + " L=" + rule.label();
        const std::string family = "lemma33 family=" + a.family + " M=" + (offset ? "N" : "0") + " L=" + rule.label();
        keys.push_back({name, family, [offset, rule, alpha = a.alpha](std::int64_t N) {
                          MinSumParams params{offset ? N : 0, N, rule.at(N), alpha};
                          BoundReport report = lemma33_rhs(params);
                          report.set_lhs(min_sum(params));
                          return report;
                        }});
      }
  return run_series("lemma33", keys, spec.n_grid, exec);
}

BoundScan rcount_scan(const ScanSpec& spec, const Executor& exec) {
  spec.validate();
  std::vector<SeriesKey> keys;
  for (const NamedAlpha& a : spec.alphas)
    for (double delta : spec.deltas) {
      const std::string name = "rcount alpha=" + a.label + " delta=" + format_double(delta);
      const std::string family = "rcount family=" + a.family + " delta=" + format_double(delta);
      keys.push_back({name, family, [delta, alpha = a.alpha](std::int64_t N) { return rcount_envelope(0, N, alpha, delta); }});
    }
  return run_series("rcount", keys, spec.n_grid, exec);
}

void write_csv(std::ostream& out, const BoundScan& scan) {
  if (scan.rows.empty()) return;
  const BoundReport& first = scan.rows.front().report;
  out << "series";
  for (const auto& [name, value] : first.params) out << ',' << name;
  out << ",prefactor,lhs";
  for (const auto& t : first.terms) out << ',' << t.name;
  out << ",rhs,ratio\n";
  for (const auto& row : scan.rows) {
    const BoundReport& r = row.report;
    out << '"' << scan.series[row.series].name << '"';
    for (const auto& [name, value] : r.params) out << ',' << value;
    out << ',' << format_double(r.prefactor) << ',' << format_double(r.lhs);
    for (const auto& t : r.terms) out << ',' << format_double(t.value);
    out << ',' << format_double(r.rhs_total) << ',' << format_double(r.ratio) << '\n';
  }
}

nlohmann::json summary_json(const BoundScan& scan, const ScanSpec& spec) {
  nlohmann::json fits = nlohmann::json::array();
  nlohmann::json max_ratios = nlohmann::json::object();
  nlohmann::json residuals = nlohmann::json::object();
  for (const auto& s : scan.series) {
    nlohmann::json entry = {{"series", s.name}, {"fit_ok", s.fit_ok}};
    if (s.fit_ok) entry["fit"] = to_json(s.fit);
    fits.push_back(std::move(entry));
    max_ratios[s.name] = s.max_ratio;
    if (s.fit_ok) residuals[s.name] = s.fit.max_abs_residual;
  }
  nlohmann::json family_fits = nlohmann::json::array();
  for (const auto& f : scan.families) {
    nlohmann::json entry = {{"family", f.name}, {"fit_ok", f.fit_ok}, {"max_ratio", f.max_ratio}};
    if (f.fit_ok) entry["fit"] = to_json(f.fit);
    family_fits.push_back(std::move(entry));
  }
  return {{"kind", scan.kind},
          {"fits", std::move(fits)},
          {"family_fits", std::move(family_fits)},
          {"max_ratios", std::move(max_ratios)},
          {"residuals", std::move(residuals)},
          {"max_slope", scan.max_slope()},
          {"seed", spec.seed},
          {"grid", spec.n_grid}};
}

nlohmann::json summary_json(const ErrorGrowthScan& scan, std::span<const std::int64_t> t_grid, std::uint64_t seed) {
  nlohmann::json residuals = nlohmann::json::object();
  for (const auto& row : scan.rows)
    residuals[std::to_string(row.approx.order)] = static_cast<double>(row.approx.identity_residual);
  return {{"kind", "error-growth"},
          {"fits", nlohmann::json::array({to_json(scan.fit)})},
          {"max_ratios", nlohmann::json::object()},
          {"residuals", std::move(residuals)},
          {"max_relative_gap", scan.max_relative_gap},
          {"seed", seed},
          {"grid", std::vector<std::int64_t>(t_grid.begin(), t_grid.end())}};
}

}  // namespace fl
