#include <doctest.h>

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "fl/analysis.hpp"

using fl::FitPoint;
using fl::Fraction;

namespace {

fl::ScanSpec small_spec(std::uint64_t seed) {
  fl::ScanSpec spec = fl::default_scan_spec(seed);
  spec.n_grid = {256, 512, 1024};
  spec.ks = {2};
  spec.qs = {1, 6};
  spec.alphas.resize(6);
  return spec;
}

std::string csv_of(const fl::BoundScan& scan) {
  std::ostringstream os;
  fl::write_csv(os, scan);
  return os.str();
}

}  // namespace

TEST_CASE("loglog_fit recovers exact power laws") {
  const std::vector<FitPoint> square{{10, 100}, {100, 1e4}, {1000, 1e6}};
  const auto f = fl::loglog_fit(square);
  CHECK(f.slope == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(f.point_count == 3);
  CHECK(f.max_abs_residual < 1e-12);

  std::vector<FitPoint> scaled;
  for (double x : {2.0, 5.0, 17.0, 80.0, 333.0}) scaled.push_back({x, 5 * std::pow(x, 2.5)});
  const auto g = fl::loglog_fit(scaled);
  CHECK(std::fabs(g.slope - 2.5) / 2.5 < 1e-10);
  CHECK(g.intercept == doctest::Approx(std::log(5.0)).epsilon(1e-10));

  std::vector<FitPoint> mixed;
  for (double x = 10; x <= 1e4; x *= 2) mixed.push_back({x, x * x + x});
  // Independent least-squares fit of the same points: 1.9881953990822008.
  // log(1 + 1/x) decreases in x, so the slope sits just below 2.
  CHECK(fl::loglog_fit(mixed).slope == doctest::Approx(1.9881953990822008).epsilon(1e-12));
}

TEST_CASE("loglog_fit input handling") {
  const std::vector<FitPoint> with_zero{{1, 1}, {2, 0}, {3, 9}, {4, 16}};
  const auto f = fl::loglog_fit(with_zero);
  CHECK(f.dropped == 1);
  CHECK(f.point_count == 3);
  CHECK_THROWS_AS(fl::loglog_fit(std::vector<FitPoint>{{1, 1}, {2, 4}}), std::invalid_argument);
  CHECK_THROWS_AS(fl::loglog_fit(std::vector<FitPoint>{{1, 1}, {2, 0}, {3, 0}, {4, 16}}), std::invalid_argument);
  CHECK_THROWS_AS(fl::loglog_fit(std::vector<FitPoint>{{1, 1}, {-2, 4}, {3, 9}}), std::invalid_argument);
  CHECK_THROWS_AS(fl::loglog_fit(std::vector<FitPoint>{{0, 1}, {2, 4}, {3, 9}}), std::invalid_argument);
  const auto j = fl::to_json(f);
  CHECK(j.at("point_count") == 3);
  CHECK(j.contains("slope"));
}

TEST_CASE("grids") {
  CHECK(fl::geometric_grid(100, 1600) == std::vector<std::int64_t>{100, 141, 200, 283, 400, 566, 800, 1131, 1600});
  CHECK(fl::arithmetic_grid(1, 10, 3) == std::vector<std::int64_t>{1, 4, 7, 10});
  CHECK_THROWS_AS(fl::geometric_grid(0, 5), std::invalid_argument);
  CHECK_THROWS_AS(fl::arithmetic_grid(1, 10, 0), std::invalid_argument);
  const auto g = fl::geometric_grid(1, 40);
  for (std::size_t i = 1; i < g.size(); ++i) CHECK(g[i - 1] < g[i]);
}

TEST_CASE("seeded uniforms are reproducible and in (0, 1)") {
  const auto a = fl::seeded_uniform(42, 100);
  CHECK(a == fl::seeded_uniform(42, 100));
  CHECK(a != fl::seeded_uniform(43, 100));
  for (double x : a) {
    CHECK(x > 0.0);
    CHECK(x < 1.0);
  }
}

TEST_CASE("default scan spec") {
  const auto spec = fl::default_scan_spec(7);
  spec.validate();
  CHECK(spec.t_grid.front() == 100);
  CHECK(spec.t_grid.back() == 1600);
  CHECK(spec.n_grid == std::vector<std::int64_t>{256, 512, 1024, 2048, 4096, 8192, 16384});
  CHECK(spec.ks == std::vector<int>{2, 3});
  CHECK(spec.qs == std::vector<std::int64_t>{1, 6, 30, 210});
  CHECK(spec.alphas.size() == 12);
  CHECK(spec.lengths.size() == 3);
  CHECK(spec.offset_by_n.size() == 2);
  CHECK(spec.deltas == std::vector<double>{0.25, 0.0625, 0.015625});
  CHECK(spec.seed == 7);
  fl::ScanSpec bad = spec;
  bad.n_grid = {512, 256};
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad.n_grid.clear();
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("error growth scan on a small grid") {
  const auto tables = fl::build_tables(120);
  const std::vector<std::int64_t> grid{20, 28, 40, 57, 80, 113, 120};
  const auto scan = fl::error_growth_scan(tables, grid, fl::Executor{});
  REQUIRE(scan.rows.size() == grid.size());
  for (const auto& row : scan.rows) {
    if (row.approx.order <= fl::kExactCrossCheckLimit) {
      REQUIRE(row.exact_error.has_value());
      const auto exact = fl::error_term(tables, row.approx.order);
      CHECK(*row.exact_error == exact.error);
      CHECK(row.relative_gap < 1e-9);
    } else {
      CHECK_FALSE(row.exact_error.has_value());
    }
  }
  CHECK(scan.max_relative_gap < 1e-9);
  CHECK(scan.fit.point_count == 7);
  std::ostringstream os;
  fl::write_csv(os, scan);
  CHECK(os.str().rfind("T,C,F,G,E,absE,Sigma,Icount,residual,exact_E\n", 0) == 0);
  const auto j = fl::summary_json(scan, grid, 5);
  for (const char* key : {"fits", "max_ratios", "residuals", "seed", "grid"}) CHECK(j.contains(key));
}

TEST_CASE("mertens envelope") {
  const auto tables = fl::build_tables(1'000'000);
  const std::vector<std::int64_t> grid{16, 1000, 1'000'000};
  const auto rows = fl::mertens_envelope_scan(tables, grid);
  CHECK(rows[0].mertens == -1);
  CHECK(rows[2].normalized < 10.0);
  for (const auto& r : rows) CHECK(std::llabs(r.mertens) <= r.t);
  CHECK(fl::rho_envelope(16.0) > 1.0);
  CHECK_THROWS_AS(fl::mertens_envelope_scan(tables, std::vector<std::int64_t>{15}), std::invalid_argument);
}

TEST_CASE("bound scans are deterministic across worker counts") {
  const auto tables = fl::build_tables(210);
  const auto spec = small_spec(3);
  const fl::Executor one(1), three(3);
  CHECK(csv_of(fl::prop31_scan(tables, spec, one)) == csv_of(fl::prop31_scan(tables, spec, three)));
  CHECK(csv_of(fl::lemma33_scan(spec, one)) == csv_of(fl::lemma33_scan(spec, three)));
  CHECK(csv_of(fl::rcount_scan(spec, one)) == csv_of(fl::rcount_scan(spec, three)));
}

TEST_CASE("bound scan structure") {
  const auto tables = fl::build_tables(210);
  const auto spec = small_spec(3);
  const auto scan = fl::prop31_scan(tables, spec, fl::Executor{});
  CHECK(scan.series.size() == 2 * 6);
  CHECK(scan.rows.size() == 2 * 6 * 3);
  for (const auto& row : scan.rows) {
    CHECK(std::isfinite(row.report.ratio));
    CHECK(row.report.ratio >= 0.0);
    CHECK(row.report.rhs_total > 0.0);
  }
  // Families pool alpha: rational, quadratic, random for each (k, q).
  REQUIRE(scan.families.size() == 2 * 3);
  CHECK(scan.families[0].name == "prop31 k=2 q=1 family=rational");
  for (std::size_t i = 0; i < spec.n_grid.size(); ++i)
    CHECK(scan.families[0].max_ratio >= std::max(scan.rows[i].report.ratio, scan.rows[3 + i].report.ratio));
  const double pooled = std::max(scan.series[0].max_ratio, scan.series[1].max_ratio);
  CHECK(scan.families[0].max_ratio == pooled);

  const auto j = fl::summary_json(scan, spec);
  CHECK(j.at("kind") == "prop31");
  CHECK(j.at("family_fits").size() == 6);
  CHECK(j.at("seed") == 3);
  CHECK(j.at("max_ratios").size() == scan.series.size());

  const auto lemma = fl::lemma33_scan(spec, fl::Executor{});
  CHECK(lemma.series.size() == 6 * 2 * 3);
  const auto rc = fl::rcount_scan(spec, fl::Executor{});
  CHECK(rc.series.size() == 6 * 3);
}

TEST_CASE("instantiation row reproduces the k = 2 display") {
  // N = A, q = b, alpha = d / b^2 with A = 300, b = 30, d = 7.
  const auto tables = fl::build_tables(30);
  const fl::PsiSumParams params{300, 2, Fraction(7, 900), 30, 0.05};
  const auto r = fl::prop31_rhs(tables, params);
  const double alpha = 7.0 / 900;
  CHECK(r.term("main") == doctest::Approx(300 * std::sqrt(alpha) * 8).epsilon(1e-14));
  CHECK(r.term("secondary") == doctest::Approx(std::sqrt(300.0) * fl::f_beta(tables, 30, 0.5)).epsilon(1e-14));
  CHECK(r.term("tertiary") == doctest::Approx(fl::f_beta(tables, 30, 1.0) / std::sqrt(alpha)).epsilon(1e-14));
}

TEST_CASE("number formatting is fixed") {
  CHECK(fl::format_double(0.1) == "0.10000000000000001");
  CHECK(fl::format_double(2.0) == "2");
}
