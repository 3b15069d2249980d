#include "fl/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "fl/analysis.hpp"
#include "fl/farey.hpp"
#include "fl/fracsum.hpp"
#include "fl/lattice.hpp"
#include "fl/phase.hpp"
#include "fl/sieve.hpp"

namespace fl::cli {

std::uint64_t fnv1a64(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

namespace {

constexpr double kSlopeTolerance = 0.05;
constexpr double kExponentLow = 1.9;
constexpr double kExponentHigh = 2.7;
constexpr double kRelativeGapTolerance = 1e-9;
constexpr std::uint64_t kDefaultSeed = 1;

struct Output {
  std::string body;
  bool json = false;
  std::int64_t table_limit = 0;
  std::vector<std::string> failures;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Values {
  unsigned jobs = 0;
  std::string out_path;
  std::string format = "csv";
  std::uint64_t seed = kDefaultSeed;

  std::int64_t limit = 0;
  std::int64_t order = 0;
  std::int64_t from = 0;
  std::int64_t to = 0;
  std::int64_t step = 0;
  bool exact = false;
  std::int64_t N = 0;
  std::int64_t M = 0;
  std::int64_t L = 4;
  std::int64_t q = 1;
  int k = 2;
  std::string alpha;
  double epsilon = 0.05;
  double delta = 0.25;
  std::string input;
  std::string x_column;
  std::string y_column;
};

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

/// Arguments minus --out/--jobs, which never change the produced rows.
std::vector<std::string> canonical_args(const std::vector<std::string>& args) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < args.size(); ++i) {
    const std::string& a = args[i];
    if (a == "--out" || a == "--jobs") {
      ++i;
      continue;
    }
    if (a.rfind("--out=", 0) == 0 || a.rfind("--jobs=", 0) == 0) continue;
    out.push_back(a);
  }
  return out;
}

std::string join(const std::vector<std::string>& parts, char sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

Alpha alpha_flag(const Values& v) {
  if (v.alpha.empty()) throw UsageError("--alpha is required");
  try {
    Alpha a = parse_alpha(v.alpha, v.exact);
    if (!(alpha_value(a) > 0.0)) throw std::invalid_argument("alpha must be > 0");
    return a;
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("--alpha: ") + e.what());
  }
}

std::string report_csv(const BoundReport& r) {
  std::ostringstream os;
  for (const auto& [name, value] : r.params) os << name << ',';
  os << "prefactor,lhs";
  for (const auto& t : r.terms) os << ',' << t.name;
  os << ",rhs,ratio\n";
  for (const auto& [name, value] : r.params) os << value << ',';
  os << format_double(r.prefactor) << ',' << format_double(r.lhs);
  for (const auto& t : r.terms) os << ',' << format_double(t.value);
  os << ',' << format_double(r.rhs_total) << ',' << format_double(r.ratio) << '\n';
  return os.str();
}

std::string exact_row(const LatticeCountResult& r) {
  std::ostringstream os;
  os << r.order << ',' << r.count << ',' << r.farey_count << ',' << r.second_moment.to_string() << ','
     << r.error.to_string() << ',' << r.sigma.to_string() << ',' << r.half_count << ','
     << r.identity_residual.to_string() << '\n';
  return os.str();
}

std::string approx_row(const LatticeCountApprox& r) {
  std::ostringstream os;
  os << r.order << ',' << r.count << ',' << r.farey_count << ',' << format_long_double(r.second_moment) << ','
     << format_long_double(r.error) << ',' << format_long_double(r.sigma) << ',' << r.half_count << ','
     << format_long_double(r.identity_residual) << '\n';
  return os.str();
}

std::vector<std::int64_t> grid_from_flags(const Values& v, std::vector<std::int64_t> fallback) {
  if (v.from == 0 && v.to == 0) return fallback;
  if (v.from < 1 || v.to < v.from) throw UsageError("--from/--to: need 1 <= from <= to");
  if (v.step > 0) return arithmetic_grid(v.from, v.to, v.step);
  return geometric_grid(v.from, v.to);
}

std::vector<std::int64_t> power_of_two_grid(const Values& v, std::vector<std::int64_t> fallback) {
  if (v.from == 0 && v.to == 0) return fallback;
  if (v.from < 1 || v.to < v.from) throw UsageError("--from/--to: need 1 <= from <= to");
  std::vector<std::int64_t> grid;
  for (std::int64_t n = 1; n <= v.to; n *= 2)
    if (n >= v.from) grid.push_back(n);
  if (grid.size() < 3) throw UsageError("--from/--to: N range must contain at least 3 powers of two");
  return grid;
}

std::vector<std::pair<double, double>> read_columns(const std::string& path, const std::string& x, const std::string& y) {
  std::ifstream in(path);
  if (!in) throw UsageError("--input: cannot open '" + path + "'");
  std::string line;
  std::vector<std::string> header;
  std::vector<std::pair<double, double>> rows;
  std::ptrdiff_t xi = -1, yi = -1;
  auto split = [](const std::string& s) {
    std::vector<std::string> cells;
    std::string cell;
    bool quoted = false;
    for (char c : s) {
      if (c == '"') {
        quoted = !quoted;
      } else if (c == ',' && !quoted) {
        cells.push_back(cell);
        cell.clear();
      } else {
        cell += c;
      }
    }
    cells.push_back(cell);
    return cells;
  };
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    auto cells = split(line);
    if (header.empty()) {
      header = cells;
      auto find = [&](const std::string& name) -> std::ptrdiff_t {
        auto it = std::find(header.begin(), header.end(), name);
        return it == header.end() ? -1 : it - header.begin();
      };
      xi = find(x);
      yi = find(y);
      if (xi < 0) throw UsageError("--x: no column named '" + x + "'");
      if (yi < 0) throw UsageError("--y: no column named '" + y + "'");
      continue;
    }
    const auto need = static_cast<std::size_t>(std::max(xi, yi));
    if (cells.size() <= need) throw std::invalid_argument("fit: short row in '" + path + "'");
    auto number = [&](const std::string& s) {
      const Fraction f = s.find('/') != std::string::npos ? Fraction::parse(s) : Fraction(0);
      return s.find('/') != std::string::npos ? f.to_double() : std::stod(s);
    };
    rows.emplace_back(number(cells[static_cast<std::size_t>(xi)]), number(cells[static_cast<std::size_t>(yi)]));
  }
  return rows;
}

/// Every subcommand's own help page, depth first.
void append_help(const CLI::App& app, std::string& text) {
  const std::function<bool(const CLI::App*)> all = [](const CLI::App*) { return true; };
  for (const CLI::App* sub : app.get_subcommands(all)) {
    std::string path = sub->get_name();
    for (const CLI::App* up = sub->get_parent(); up != nullptr; up = up->get_parent()) path = up->get_name() + " " + path;
    text += "\n== " + path + " ==\n";
    text += sub->help();
    append_help(*sub, text);
  }
}

int emit(const Output& result, const Values& v, const std::vector<std::string>& args, std::ostream& out,
         std::ostream& err) {
  const std::vector<std::string> canon = canonical_args(args);
  const std::string command = join(canon, ' ');
  const std::string inputs = command + '\x1f' + kVersion + '\x1f' + std::to_string(v.seed) + '\x1f' +
                             std::to_string(result.table_limit);
  const std::string inputs_digest = hex64(fnv1a64(inputs));

  std::string text;
  if (result.json) {
    nlohmann::json doc = nlohmann::json::parse(result.body);
    doc["manifest"] = {{"command", command}, {"seed", v.seed}, {"inputs_digest", inputs_digest}};
    text = doc.dump(2) + "\n";
  } else {
    std::ostringstream os;
    os << "# farey-lattice " << kVersion << '\n'
       << "# command: " << command << '\n'
       << "# seed: " << v.seed << '\n'
       << "# table-limit: " << result.table_limit << '\n'
       << "# inputs-digest: " << inputs_digest << '\n'
       << result.body;
    text = os.str();
  }

  nlohmann::json manifest = {{"command", command},
                             {"table_limit", result.table_limit},
                             {"seed", v.seed},
                             {"versions",
                              {{"farey-lattice", kVersion},
                               {"gmp", gmp_version},
                               {"cli11", CLI11_VERSION},
                               {"nlohmann_json", std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." +
                                                     std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
                                                     std::to_string(NLOHMANN_JSON_VERSION_PATCH)}}},
                             {"timestamp", utc_timestamp()},
                             {"inputs_digest", inputs_digest},
                             {"output_digest", hex64(fnv1a64(text))},
                             {"assertion_failures", result.failures}};

  if (!v.out_path.empty()) {
    std::ofstream file(v.out_path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot write '" + v.out_path + "'");
    file << text;
    std::ofstream mf(v.out_path + ".manifest.json", std::ios::binary);
    mf << manifest.dump(2) << '\n';
  } else {
    out << text;
    out.flush();
    err << "# manifest " << manifest.dump() << '\n';
  }
  for (const auto& f : result.failures) err << "assertion failed: " << f << '\n';
  return result.failures.empty() ? kOk : kAssertionFailed;
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact Farey-fraction lattice counts, fractional-part sums and bound diagnostics.", "farey-lattice"};
  app.set_help_all_flag("--help-all", "Print help for every subcommand and exit");
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  app.fallthrough();

  Values v;
  app.add_option("--jobs", v.jobs, "Worker threads (0 = logical cores)")->default_val(0);
  app.add_option("--out", v.out_path, "Write output here instead of standard output");
  app.add_option("--format", v.format, "Output format")->check(CLI::IsMember({"csv", "json"}))->default_val("csv");
  app.add_option("--seed", v.seed, "Seed for sampled alpha values")->default_val(kDefaultSeed);

  auto add_order = [&](CLI::App* cmd) { return cmd->add_option("-T,--order", v.order, "Farey order T")->required(); };
  auto add_range = [&](CLI::App* cmd) {
    cmd->add_option("--from", v.from, "First grid value");
    cmd->add_option("--to", v.to, "Last grid value");
    cmd->add_option("--step", v.step, "Arithmetic step (default: sqrt 2 geometric grid)");
  };
  auto add_alpha = [&](CLI::App* cmd) {
    return cmd->add_option("--alpha", v.alpha, "alpha as p/q, decimal, 'golden' or 'invsqrt2'")->required();
  };
  auto add_exact = [&](CLI::App* cmd) { cmd->add_flag("--exact", v.exact, "Exact rational arithmetic"); };

  // tables
  auto* tables_cmd = app.add_subcommand("tables", "Dump n,mu,phi,omega,mertens up to a limit");
  tables_cmd->add_option("--limit", v.limit, "Largest n")->required();

  // farey
  auto* farey_cmd = app.add_subcommand("farey", "Farey fractions of order T");
  farey_cmd->require_subcommand(1);
  auto* farey_list = farey_cmd->add_subcommand("list", "List F(T) in increasing order");
  add_order(farey_list);
  auto* farey_stats_cmd = farey_cmd->add_subcommand("stats", "Cardinality, #I(T) and exact G(T)");
  add_order(farey_stats_cmd);

  // lattice
  auto* lattice_cmd = app.add_subcommand("lattice", "C(T), E(T) and Sigma(T)");
  lattice_cmd->require_subcommand(1);
  auto* lattice_compute = lattice_cmd->add_subcommand("compute", "One row for order T");
  add_order(lattice_compute);
  add_exact(lattice_compute);
  auto* lattice_scan = lattice_cmd->add_subcommand("scan", "Rows for T = from..to by step");
  lattice_scan->add_option("--from", v.from, "First order")->required();
  lattice_scan->add_option("--to", v.to, "Last order")->required();
  lattice_scan->add_option("--step", v.step, "Step (default 1)");
  add_exact(lattice_scan);

  // fracsum
  auto* fracsum_cmd = app.add_subcommand("fracsum", "Constrained psi sums");
  fracsum_cmd->require_subcommand(1);
  auto* fracsum_eval = fracsum_cmd->add_subcommand("eval", "Sum psi(n^k alpha) over N < n <= 2N, (n, q) = 1");
  fracsum_eval->add_option("--N", v.N, "Window start N")->required();
  fracsum_eval->add_option("--k", v.k, "Exponent k >= 2")->default_val(2);
  add_alpha(fracsum_eval);
  fracsum_eval->add_option("--q", v.q, "Coprimality modulus q")->default_val(1);
  add_exact(fracsum_eval);

  // bounds
  auto* bounds_cmd = app.add_subcommand("bounds", "Evaluate one bound instance: lhs, rhs terms, ratio");
  bounds_cmd->require_subcommand(1);
  auto* prop31_cmd = bounds_cmd->add_subcommand("prop31", "|psi sum| against the Weyl-type bound");
  prop31_cmd->add_option("--N", v.N, "Window start N")->required();
  prop31_cmd->add_option("--k", v.k, "Exponent k >= 2")->default_val(2);
  add_alpha(prop31_cmd);
  prop31_cmd->add_option("--q", v.q, "Coprimality modulus q")->default_val(1);
  prop31_cmd->add_option("--epsilon", v.epsilon, "epsilon in (0, 1/2]")->default_val(0.05);
  add_exact(prop31_cmd);
  auto* lemma33_cmd = bounds_cmd->add_subcommand("lemma33", "sum min(L, 1/||n alpha||) against its bound");
  lemma33_cmd->add_option("--M", v.M, "Window offset M >= 0")->default_val(0);
  lemma33_cmd->add_option("--N", v.N, "Window length N")->required();
  lemma33_cmd->add_option("--L", v.L, "Cap L >= 4")->default_val(4);
  add_alpha(lemma33_cmd);
  add_exact(lemma33_cmd);
  auto* vdc_cmd = bounds_cmd->add_subcommand("vdc", "|psi sum| (q = 1) against the Van der Corput bound");
  vdc_cmd->add_option("--N", v.N, "Window start N")->required();
  vdc_cmd->add_option("--k", v.k, "Exponent k >= 2")->default_val(2);
  add_alpha(vdc_cmd);
  add_exact(vdc_cmd);
  auto* rcount_cmd = bounds_cmd->add_subcommand("rcount", "#{n : ||n alpha|| < delta} against its envelope");
  rcount_cmd->add_option("--M", v.M, "Window offset M >= 0")->default_val(0);
  rcount_cmd->add_option("--N", v.N, "Window length N")->required();
  add_alpha(rcount_cmd);
  rcount_cmd->add_option("--delta", v.delta, "delta in (0, 1/4]")->default_val(0.25);
  add_exact(rcount_cmd);

  // scan
  auto* scan_cmd = app.add_subcommand("scan", "Grid scans with fits; nonzero exit if an assertion fails");
  scan_cmd->require_subcommand(1);
  auto* scan_error = scan_cmd->add_subcommand("error-growth", "|E(T)| over a T grid and its log-log exponent");
  add_range(scan_error);
  auto* scan_mertens = scan_cmd->add_subcommand("mertens", "M(t), |M(t)|/sqrt t and rho(t) with o(1) = 0");
  add_range(scan_mertens);
  auto* scan_prop31 = scan_cmd->add_subcommand("prop31", "Ratio series |psi sum| / bound over the N grid");
  add_range(scan_prop31);
  auto* scan_lemma33 = scan_cmd->add_subcommand("lemma33", "Ratio series min sum / bound over the N grid");
  add_range(scan_lemma33);
  auto* scan_rcount = scan_cmd->add_subcommand("rcount", "Ratio series near-integer count / envelope");
  add_range(scan_rcount);

  // identity-check
  auto* identity_cmd = app.add_subcommand("identity-check", "Exact check E(T) = Sigma(T) - #I(T)/2");
  identity_cmd->add_option("--from", v.from, "First order (default 1)");
  identity_cmd->add_option("--to", v.to, "Last order")->required();

  // fit
  auto* fit_cmd = app.add_subcommand("fit", "Log-log least squares over two CSV columns");
  fit_cmd->add_option("--input", v.input, "CSV file (lines starting with # are skipped)")->required();
  fit_cmd->add_option("--x", v.x_column, "x column")->required();
  fit_cmd->add_option("--y", v.y_column, "y column")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    std::string text = app.help();
    append_help(app, text);
    out << text;
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << '\n';
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\nRun with --help-all for the full flag list.\n";
    return kUsageError;
  }

  const Executor exec(v.jobs);
  const bool as_json = v.format == "json";

  try {
    Output result;
    std::ostringstream body;

    if (*tables_cmd) {
      const ArithTables tables = build_tables(v.limit);
      tables.write_csv(body);
      result.table_limit = v.limit;
    } else if (*farey_list) {
      FareySequence seq(v.order);
      body << "a,b\n";
      while (auto t = seq.next()) body << t->num << ',' << t->den << '\n';
    } else if (*farey_stats_cmd) {
      const ArithTables tables = build_tables(v.order);
      const FareyStats s = farey_stats(tables, v.order);
      body << "T,F,I_count,G_num,G_den\n"
           << s.order << ',' << s.cardinality << ',' << s.half_count << ',' << s.second_moment.num().get_str() << ','
           << s.second_moment.den().get_str() << '\n';
      result.table_limit = v.order;
    } else if (*lattice_compute || *lattice_scan) {
      std::vector<std::int64_t> grid;
      if (*lattice_compute) {
        grid = {v.order};
      } else {
        if (v.step == 0) v.step = 1;
        if (v.step < 1 || v.from < 1 || v.to < v.from) throw UsageError("--from/--to/--step: need 1 <= from <= to, step >= 1");
        grid = arithmetic_grid(v.from, v.to, v.step);
      }
      const ArithTables tables = build_tables(grid.back());
      result.table_limit = grid.back();
      body << "T,C,F,G,E,Sigma,Icount,residual\n";
      for (std::int64_t T : grid) body << (v.exact ? exact_row(error_term(tables, T, exec)) : approx_row(error_term_approx(tables, T, exec)));
    } else if (*fracsum_eval) {
      const Alpha alpha = alpha_flag(v);
      if (v.exact && !alpha_is_exact(alpha)) throw UsageError("--alpha: --exact needs a rational alpha");
      const ArithTables tables = build_tables(std::max<std::int64_t>(v.q, 1));
      result.table_limit = tables.limit();
      const PsiSumParams params{v.N, v.k, alpha, v.q, 0.05};
      const PsiSumResult r = v.exact ? psi_sum(tables, params) : psi_sum_approx(tables, params);
      body << "N,k,alpha,q,mode,terms,value,value_float\n"
           << v.N << ',' << v.k << ',' << alpha_label(alpha) << ',' << v.q << ',' << (r.exact ? "exact" : "float") << ','
           << r.term_count << ',' << (r.exact ? r.exact_value->to_string() : format_double(r.value)) << ','
           << format_double(r.value) << '\n';
    } else if (*prop31_cmd || *vdc_cmd) {
      const Alpha alpha = alpha_flag(v);
      const std::int64_t q = *prop31_cmd ? v.q : 1;
      const ArithTables tables = build_tables(std::max<std::int64_t>(q, 1));
      result.table_limit = tables.limit();
      const PsiSumParams params{v.N, v.k, alpha, q, v.epsilon};
      const double lhs = std::fabs((alpha_is_exact(alpha) ? psi_sum(tables, params) : psi_sum_approx(tables, params)).value);
      BoundReport report = *prop31_cmd ? prop31_rhs(tables, params) : vdc_rhs(v.N, v.k, alpha_value(alpha));
      report.set_lhs(lhs);
      body << report_csv(report);
    } else if (*lemma33_cmd) {
      const MinSumParams params{v.M, v.N, v.L, alpha_flag(v)};
      BoundReport report = lemma33_rhs(params);
      report.set_lhs(min_sum(params));
      body << report_csv(report);
    } else if (*rcount_cmd) {
      body << report_csv(rcount_envelope(v.M, v.N, alpha_flag(v), v.delta));
    } else if (*scan_error) {
      const std::vector<std::int64_t> grid = grid_from_flags(v, geometric_grid(100, 1600));
      const ArithTables tables = build_tables(grid.back());
      result.table_limit = grid.back();
      const ErrorGrowthScan scan = error_growth_scan(tables, grid, exec);
      if (as_json)
        body << summary_json(scan, grid, v.seed).dump();
      else
        write_csv(body, scan);
      if (scan.fit.point_count >= 3 && (scan.fit.slope < kExponentLow || scan.fit.slope > kExponentHigh))
        result.failures.push_back("error-growth exponent " + format_double(scan.fit.slope) + " outside [1.9, 2.7]");
      if (scan.max_relative_gap > kRelativeGapTolerance)
        result.failures.push_back("float vs exact |E(T)| relative gap " + format_double(scan.max_relative_gap));
    } else if (*scan_mertens) {
      const std::vector<std::int64_t> grid = grid_from_flags(v, geometric_grid(16, 1'000'000));
      const ArithTables tables = build_tables(grid.back());
      result.table_limit = grid.back();
      const auto rows = mertens_envelope_scan(tables, grid);
      write_csv(body, rows);
      for (const auto& r : rows)
        if (std::llabs(r.mertens) > r.t) result.failures.push_back("|M(t)| > t at t=" + std::to_string(r.t));
    } else if (*scan_prop31 || *scan_lemma33 || *scan_rcount) {
      ScanSpec spec = default_scan_spec(v.seed);
      spec.n_grid = power_of_two_grid(v, spec.n_grid);
      const std::int64_t max_q = *std::max_element(spec.qs.begin(), spec.qs.end());
      const ArithTables tables = build_tables(max_q);
      result.table_limit = max_q;
      const BoundScan scan = *scan_prop31    ? prop31_scan(tables, spec, exec)
                             : *scan_lemma33 ? lemma33_scan(spec, exec)
                                             : rcount_scan(spec, exec);
      if (as_json)
        body << summary_json(scan, spec).dump();
      else
        write_csv(body, scan);
      for (const auto& s : scan.series)
        if (s.fit_ok && s.fit.slope > kSlopeTolerance)
          result.failures.push_back(s.name + ": ratio slope " + format_double(s.fit.slope) + " > 0.05");
    } else if (*identity_cmd) {
      if (v.from == 0) v.from = 1;
      if (v.from < 1 || v.to < v.from) throw UsageError("--from/--to: need 1 <= from <= to");
      const ArithTables tables = build_tables(v.to);
      result.table_limit = v.to;
      body << "T,E,Sigma,Icount,residual\n";
      for (std::int64_t T = v.from; T <= v.to; ++T) {
        const LatticeCountResult r = error_term(tables, T, exec);
        body << T << ',' << r.error.to_string() << ',' << r.sigma.to_string() << ',' << r.half_count << ','
             << r.identity_residual.to_string() << '\n';
        if (r.identity_residual != Fraction(0))
          result.failures.push_back("identity residual " + r.identity_residual.to_string() + " at T=" +
                                    std::to_string(T));
      }
    } else if (*fit_cmd) {
      std::vector<FitPoint> points;
      for (auto [x, y] : read_columns(v.input, v.x_column, v.y_column)) points.push_back({x, std::fabs(y)});
      const FitResult fit = loglog_fit(points);
      nlohmann::json doc = to_json(fit);
      doc["x"] = v.x_column;
      doc["y"] = v.y_column;
      body << doc.dump();
      result.json = true;
    }

    if (as_json && !result.json) {
      // Row-oriented commands wrap their CSV in a JSON envelope.
      const std::string csv = body.str();
      if (!csv.empty() && csv.front() == '{') {
        result.json = true;
        result.body = csv;
      } else {
        result.json = true;
        result.body = nlohmann::json{{"csv", csv}}.dump();
      }
    } else {
      result.body = body.str();
    }
    return emit(result, v, args, out, err);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kAssertionFailed;
  }
}

}  // namespace fl::cli
