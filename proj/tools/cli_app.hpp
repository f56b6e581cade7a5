#pragma once

// Command layer behind the `entire` executable. run() never touches argv or
// the process streams, so the tests drive it directly.

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include <nlohmann/json.hpp>

#include "entire/entire.hpp"
#include "entire/io.hpp"

namespace entire::cli {

using io::Json;

/// Invalid flag combination, unknown config key, unwritable output.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum ExitCode : int { kOk = 0, kOther = 1, kConfig = 2, kAccuracy = 3, kInfeasible = 4 };

struct RunConfig {
  std::string command;  // norms | approx | estimate | integer | matrix
  std::vector<std::string> spaces;
  std::vector<std::string> functions;
  Index n_max = 2000;
  std::optional<Index> tail_budget;
  std::string format;  // csv | json | table; empty picks the command default
  std::string output;  // empty: standard output
  std::optional<double> rho;
  bool use_upper = false;
  double rho_tolerance = 0.02;
  double sigma_tolerance = 0.03;
  EntiretyThresholds thresholds;
  std::optional<Index> lacunary;
  bool paper_variants = false;
  int jobs = 1;
};

struct RunResult {
  int exit_code = kOk;
  std::string output;  // the report, when it goes to standard output
  std::string error;   // one JSON line, when exit_code != 0
};

inline const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = {
      "command",      "space",           "function",        "n_max",        "tail_budget",
      "format",       "output",          "rho",             "use_upper",    "rho_tolerance",
      "sigma_tolerance", "entire_below", "not_entire_above", "slope_entire", "slope_not_entire",
      "lacunary",     "paper_variants",  "jobs"};
  return keys;
}

namespace detail {

inline std::vector<std::string> string_list(const Json& v, const std::string& key) {
  if (v.is_string()) return {v.get<std::string>()};
  if (!v.is_array()) throw ConfigError("config key '" + key + "' must be a string or a list of strings");
  std::vector<std::string> out;
  for (const auto& s : v) {
    if (!s.is_string()) throw ConfigError("config key '" + key + "' must hold strings");
    out.push_back(s.get<std::string>());
  }
  return out;
}

template <class T>
T typed(const Json& v, const std::string& key) {
  try {
    return v.get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ConfigError("config key '" + key + "' has the wrong type");
  }
}

}  // namespace detail

/// Flat override bundle: every key must be one of config_keys().
inline void apply_config(RunConfig& cfg, const Json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  const auto& keys = config_keys();
  for (const auto& [key, v] : j.items()) {
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) throw ConfigError("unknown config key '" + key + "'");
    if (key == "command") cfg.command = detail::typed<std::string>(v, key);
    else if (key == "space") cfg.spaces = detail::string_list(v, key);
    else if (key == "function") cfg.functions = detail::string_list(v, key);
    else if (key == "n_max") cfg.n_max = detail::typed<Index>(v, key);
    else if (key == "tail_budget") cfg.tail_budget = detail::typed<Index>(v, key);
    else if (key == "format") cfg.format = detail::typed<std::string>(v, key);
    else if (key == "output") cfg.output = detail::typed<std::string>(v, key);
    else if (key == "rho") cfg.rho = detail::typed<double>(v, key);
    else if (key == "use_upper") cfg.use_upper = detail::typed<bool>(v, key);
    else if (key == "rho_tolerance") cfg.rho_tolerance = detail::typed<double>(v, key);
    else if (key == "sigma_tolerance") cfg.sigma_tolerance = detail::typed<double>(v, key);
    else if (key == "entire_below") cfg.thresholds.entire_below = detail::typed<double>(v, key);
    else if (key == "not_entire_above") cfg.thresholds.not_entire_above = detail::typed<double>(v, key);
    else if (key == "slope_entire") cfg.thresholds.slope_entire = detail::typed<double>(v, key);
    else if (key == "slope_not_entire") cfg.thresholds.slope_not_entire = detail::typed<double>(v, key);
    else if (key == "lacunary") cfg.lacunary = detail::typed<Index>(v, key);
    else if (key == "paper_variants") cfg.paper_variants = detail::typed<bool>(v, key);
    else if (key == "jobs") cfg.jobs = detail::typed<int>(v, key);
  }
}

inline void apply_config_file(RunConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("config file '" + path + "' is not valid JSON: " + e.what());
  }
  apply_config(cfg, j);
}

/// Spaces and oracles used by `matrix` when none are given.
inline std::vector<std::string> default_matrix_spaces() {
  return {"hardy:p=2", "bergman:p=2", "dirichlet:p=2,weights=power(-1)"};
}

inline std::vector<std::string> default_matrix_functions() {
  return {"exp:lambda=1",   "exp:lambda=2",          "cossqrt",          "synthetic:rho=1,sigma=1",
          "synthetic:rho=2,sigma=1", "power:rho=0.5", "power:rho=2",      "geometric:r=0.5",
          "geometric:r=0.9", "geometric:r=0.99"};
}

inline std::string default_format(const std::string& command) {
  return command == "estimate" || command == "integer" ? "json" : "csv";
}

namespace detail {

inline void require_format(const std::string& format, std::initializer_list<const char*> allowed,
                           const std::string& command) {
  for (const char* a : allowed) {
    if (format == a) return;
  }
  throw ConfigError("format '" + format + "' is not available for '" + command + "'");
}

inline const std::string& single(const std::vector<std::string>& v, const char* what, const std::string& command) {
  if (v.size() != 1) {
    throw ConfigError("'" + command + "' takes exactly one --" + what + " (got " + std::to_string(v.size()) + ")");
  }
  return v.front();
}

inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

// ---------------------------------------------------------------------------

inline std::string run_norms(const RunConfig& cfg, const std::string& format) {
  require_format(format, {"csv", "json"}, cfg.command);
  if (cfg.spaces.empty()) throw ConfigError("'norms' needs at least one --space");
  std::vector<SpaceSpec> spaces;
  for (const auto& s : cfg.spaces) spaces.push_back(parse_space(s));
  const bool many = spaces.size() > 1;

  if (format == "json") {
    Json all = Json::array();
    for (const auto& s : spaces) {
      const auto p = norm_profile(s, cfg.n_max);
      Json j = io::to_json(p);
      if (cfg.paper_variants) {
        for (auto& e : j["entries"]) {
          const auto d = displayed_monomial_norm(s, e["n"].get<Index>());
          e["log_displayed"] = d ? io::log_value(*d) : Json(nullptr);
        }
      }
      all.push_back(std::move(j));
    }
    return dump(many ? all : all.front());
  }

  std::ostringstream os;
  os << (many ? "space," : "") << "n,norm,lower,upper,kind" << (cfg.paper_variants ? ",displayed" : "") << '\n';
  for (const auto& s : spaces) {
    const auto p = norm_profile(s, cfg.n_max);
    for (const auto& e : p.entries) {
      if (many) os << '"' << p.space.to_string() << "\",";
      os << e.n << ',' << io::format_linear(e.norm.value) << ',' << io::format_linear(e.norm.lower) << ','
         << io::format_linear(e.norm.upper) << ',' << io::to_string(e.norm.kind);
      if (cfg.paper_variants) os << ',' << io::format_linear(displayed_monomial_norm(s, e.n));
      os << '\n';
    }
  }
  return os.str();
}

inline std::string run_approx(const RunConfig& cfg, const std::string& format) {
  require_format(format, {"csv", "json"}, cfg.command);
  const auto space = parse_space(single(cfg.spaces, "space", cfg.command));
  const auto f = parse_function(single(cfg.functions, "function", cfg.command));
  const auto p = approx_profile(space, f, cfg.n_max, cfg.tail_budget);
  return format == "json" ? dump(io::to_json(p)) : io::to_csv(p);
}

inline EstimateOptions estimate_options(const RunConfig& cfg) {
  EstimateOptions opt;
  opt.n_max = cfg.n_max;
  opt.tail_budget = cfg.tail_budget;
  opt.rho = cfg.rho;
  opt.use_exact = !cfg.use_upper;
  opt.thresholds = cfg.thresholds;
  return opt;
}

inline std::string estimate_csv(const EstimateReport& r) {
  // One row per n: the three raw sequences side by side.
  std::vector<std::pair<Index, std::vector<std::string>>> rows;
  auto column = [&](const Sequence& seq, std::size_t col) {
    for (auto [n, v] : seq) {
      auto it = std::find_if(rows.begin(), rows.end(), [n = n](const auto& row) { return row.first == n; });
      if (it == rows.end()) {
        rows.push_back({n, std::vector<std::string>(3)});
        it = rows.end() - 1;
      }
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.11e", v);
      it->second[col] = buf;
    }
  };
  column(r.root_sequence, 0);
  column(r.order_sequence, 1);
  column(r.type_sequence, 2);
  std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::ostringstream os;
  os << "n,root,rho_n,sigma_n\n";
  for (const auto& [n, cols] : rows) os << n << ',' << cols[0] << ',' << cols[1] << ',' << cols[2] << '\n';
  return os.str();
}

inline std::string run_estimate(const RunConfig& cfg, const std::string& format) {
  require_format(format, {"csv", "json", "table"}, cfg.command);
  const auto space = parse_space(single(cfg.spaces, "space", cfg.command));
  const auto f = parse_function(single(cfg.functions, "function", cfg.command));
  const auto r = estimate(space, f, estimate_options(cfg));
  const auto check = cross_check(r, cfg.rho_tolerance, cfg.sigma_tolerance);
  if (format == "json") return dump(io::to_json(r, check));
  if (format == "table") return io::to_table(r, check);
  return estimate_csv(r);
}

inline std::string run_lacunary(const RunConfig& cfg, const SpaceSpec& space, const std::string& format) {
  const auto res = lacunary_construct(space, *cfg.lacunary);
  const bool separable = is_coefficient_separable(space);
  std::vector<std::optional<LogReal>> errors;
  for (Index e : res.exponents) {
    errors.push_back(separable ? std::optional(integer_approx_error(space, res.oracle, e + 1, cfg.tail_budget))
                               : std::nullopt);
  }
  if (format == "csv") {
    std::ostringstream os;
    os << "k,exponent,norm,error_after\n";
    for (std::size_t i = 0; i < res.exponents.size(); ++i) {
      os << i + 1 << ',' << res.exponents[i] << ',' << io::format_linear(monomial_norm(space, res.exponents[i]).value)
         << ',' << io::format_linear(errors[i]) << '\n';
    }
    return os.str();
  }
  Json rows = Json::array();
  for (std::size_t i = 0; i < res.exponents.size(); ++i) {
    rows.push_back({{"k", i + 1},
                    {"exponent", res.exponents[i]},
                    {"log_norm", io::log_value(monomial_norm(space, res.exponents[i]).value)},
                    {"log_error_after", io::log_value(errors[i])}});
  }
  return dump({{"schema", "entire/lacunary_report/v1"},
               {"space", space.to_string()},
               {"K", *cfg.lacunary},
               {"exponents", res.exponents},
               {"function", res.oracle.name()},
               {"steps", rows}});
}

inline std::string run_integer(const RunConfig& cfg, const std::string& format) {
  require_format(format, {"csv", "json"}, cfg.command);
  const auto space = parse_space(single(cfg.spaces, "space", cfg.command));
  if (cfg.lacunary) {
    if (*cfg.lacunary < 1) throw ConfigError("--lacunary must be >= 1");
    return run_lacunary(cfg, space, format);
  }
  const auto f = parse_function(single(cfg.functions, "function", cfg.command));
  if (cfg.n_max < 1) throw ConfigError("'integer' needs --n-max >= 1");
  const bool separable = is_coefficient_separable(space);

  struct Row {
    Index n;
    LogReal obstruction;
    std::optional<LogReal> error;
  };
  std::vector<Row> rows;
  for (Index n = 1; n <= cfg.n_max; ++n) {
    rows.push_back({n, obstruction_lower_bound(space, f, n),
                    separable ? std::optional(integer_approx_error(space, f, n, cfg.tail_budget)) : std::nullopt});
  }

  if (format == "csv") {
    std::ostringstream os;
    os << "n,obstruction,error\n";
    for (const auto& r : rows) {
      os << r.n << ',' << io::format_linear(r.obstruction) << ',' << io::format_linear(r.error) << '\n';
    }
    return os.str();
  }

  Json entries = Json::array();
  for (const auto& r : rows) {
    entries.push_back({{"n", r.n}, {"log_obstruction", io::log_value(r.obstruction)}, {"log_error", io::log_value(r.error)}});
  }
  Json out = {{"schema", "entire/integer_report/v1"},
              {"space", space.to_string()},
              {"function", f.name()},
              {"n_max", cfg.n_max},
              {"separable", separable},
              {"rounded", Json(nullptr)},
              {"entries", entries}};
  try {
    out["rounded"] = io::to_json(round_to_integer_poly(f, cfg.n_max));
  } catch (const OverflowError&) {
    // rounded stays null: some coefficient below n_max is too large to materialize
  }
  if (cfg.n_max >= 100) {
    const auto probe = infimum_probe(space, cfg.n_max);
    out["infimum_probe"] = {{"log_infimum", io::log_value(probe.infimum)},
                            {"argmin", probe.argmin},
                            {"slope", probe.slope},
                            {"trend", to_string(probe.trend)}};
  }
  return dump(out);
}

// ---------------------------------------------------------------------------

struct MatrixCell {
  std::string space;
  std::string function;
  EstimateReport report;
  CrossCheck check;
  std::optional<double> rho_declared;
  std::optional<double> sigma_declared;
  std::size_t sandwich_violations = 0;
  std::size_t accuracy_failures = 0;
};

inline std::size_t sandwich_violations(const ApproxProfile& p) {
  std::size_t bad = 0;
  for (const auto& e : p.entries) {
    if (!e.upper) continue;
    const double lo = e.lower.log(), hi = e.upper->log();
    if (!(lo <= hi + 1e-9)) ++bad;
    if (e.exact && !(lo <= e.exact->log() + 1e-9 && e.exact->log() <= hi + 1e-9)) ++bad;
  }
  return bad;
}

inline MatrixCell matrix_cell(const RunConfig& cfg, const SpaceSpec& space, const CoefficientOracle& f) {
  MatrixCell c;
  c.space = space.to_string();
  c.function = f.name();
  const auto& meta = f.metadata();
  if (meta.entire && meta.order && *meta.order > 0) c.rho_declared = meta.order;
  if (c.rho_declared) c.sigma_declared = meta.type;

  auto opt = estimate_options(cfg);
  if (!opt.rho) opt.rho = c.rho_declared;
  const auto profile = approx_profile(space, f, cfg.n_max, cfg.tail_budget);
  c.sandwich_violations = sandwich_violations(profile);
  for (const auto& e : profile.entries) c.accuracy_failures += e.status == EntryStatus::accuracy_failed;
  c.report = estimate(profile, f, opt);
  c.check = cross_check(c.report, cfg.rho_tolerance, cfg.sigma_tolerance);
  return c;
}

inline std::optional<double> relative(const std::optional<double>& est, const std::optional<double>& truth) {
  if (!est || !truth || *truth == 0.0) return std::nullopt;
  return std::abs(*est - *truth) / *truth;
}

inline std::string run_matrix(const RunConfig& cfg, const std::string& format) {
  require_format(format, {"csv", "json"}, cfg.command);
  const auto space_specs = cfg.spaces.empty() ? default_matrix_spaces() : cfg.spaces;
  const auto function_specs = cfg.functions.empty() ? default_matrix_functions() : cfg.functions;
  std::vector<SpaceSpec> spaces;
  std::vector<CoefficientOracle> fs;
  for (const auto& s : space_specs) spaces.push_back(parse_space(s));
  for (const auto& s : function_specs) fs.push_back(parse_function(s));

  std::vector<std::pair<std::size_t, std::size_t>> jobs;
  for (std::size_t i = 0; i < spaces.size(); ++i) {
    for (std::size_t j = 0; j < fs.size(); ++j) jobs.emplace_back(i, j);
  }
  std::vector<std::optional<MatrixCell>> cells(jobs.size());
  std::vector<std::exception_ptr> failures(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k; (k = next++) < jobs.size();) {
      try {
        cells[k] = matrix_cell(cfg, spaces[jobs[k].first], fs[jobs[k].second]);
      } catch (...) {
        failures[k] = std::current_exception();
      }
    }
  };
  const auto n_threads = static_cast<std::size_t>(std::clamp(cfg.jobs, 1, 64));
  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < std::min(n_threads, jobs.size()); ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (const auto& e : failures) {
    if (e) std::rethrow_exception(e);
  }
  std::vector<MatrixCell> sorted;
  for (auto& c : cells) sorted.push_back(std::move(*c));
  std::stable_sort(sorted.begin(), sorted.end(), [](const MatrixCell& a, const MatrixCell& b) {
    return std::tie(a.space, a.function) < std::tie(b.space, b.function);
  });

  auto num = [](const std::optional<double>& v) {
    if (!v) return std::string();
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.11e", *v);
    return std::string(buf);
  };

  if (format == "json") {
    Json rows = Json::array();
    for (const auto& c : sorted) {
      const auto& r = c.report;
      rows.push_back({{"space", c.space},
                      {"function", c.function},
                      {"verdict", to_string(r.verdict)},
                      {"verdict_rule", r.verdict_rule},
                      {"rho_declared", io::optional_number(c.rho_declared)},
                      {"rho_hat", io::optional_number(r.rho_hat)},
                      {"rho_coeff", io::optional_number(r.rho_coeff)},
                      {"rho_error", io::optional_number(relative(r.rho_hat, c.rho_declared))},
                      {"sigma_declared", io::optional_number(c.sigma_declared)},
                      {"sigma_hat", io::optional_number(r.sigma_hat)},
                      {"sigma_coeff", io::optional_number(r.sigma_coeff)},
                      {"sigma_error", io::optional_number(relative(r.sigma_hat, c.sigma_declared))},
                      {"cross_check", io::to_json(c.check)},
                      {"sandwich_violations", c.sandwich_violations},
                      {"accuracy_failures", c.accuracy_failures}});
    }
    return dump({{"schema", "entire/matrix/v1"}, {"n_max", cfg.n_max}, {"cells", rows}});
  }

  std::ostringstream os;
  os << "space,function,verdict,rho_declared,rho_hat,rho_coeff,rho_error,sigma_declared,sigma_hat,sigma_coeff,"
        "sigma_error,rho_delta,sigma_delta,cross_check,sandwich_violations,accuracy_failures\n";
  for (const auto& c : sorted) {
    const auto& r = c.report;
    os << '"' << c.space << "\",\"" << c.function << "\"," << to_string(r.verdict) << ',' << num(c.rho_declared) << ','
       << num(r.rho_hat) << ',' << num(r.rho_coeff) << ',' << num(relative(r.rho_hat, c.rho_declared)) << ','
       << num(c.sigma_declared) << ',' << num(r.sigma_hat) << ',' << num(r.sigma_coeff) << ','
       << num(relative(r.sigma_hat, c.sigma_declared)) << ',' << num(c.check.rho_delta) << ','
       << num(c.check.sigma_delta) << ',' << (c.check.pass ? "pass" : "fail") << ',' << c.sandwich_violations << ','
       << c.accuracy_failures << '\n';
  }
  return os.str();
}

inline Json error_record(const char* kind, const std::string& message, const std::string& parameter = {}) {
  Json j = {{"error", kind}, {"message", message}};
  if (!parameter.empty()) j["parameter"] = parameter;
  return j;
}

inline std::filesystem::path output_path(const std::string& output) {
  std::filesystem::path p(output);
  if (p.is_relative()) {
    if (const char* dir = std::getenv("ENTIRE_OUTPUT_DIR"); dir && *dir) p = std::filesystem::path(dir) / p;
  }
  return p;
}

}  // namespace detail

inline RunResult run(const RunConfig& cfg) {
  RunResult res;
  auto fail = [&](int code, const Json& record) {
    res.exit_code = code;
    res.output.clear();
    res.error = record.dump();
    return res;
  };
  try {
    if (cfg.n_max < 0) throw ConfigError("n_max must be >= 0");
    if (cfg.tail_budget && *cfg.tail_budget < 0) throw ConfigError("tail_budget must be >= 0");
    if (cfg.jobs < 1) throw ConfigError("jobs must be >= 1");
    const std::string format = cfg.format.empty() ? default_format(cfg.command) : cfg.format;
    std::string text;
    if (cfg.command == "norms") text = detail::run_norms(cfg, format);
    else if (cfg.command == "approx") text = detail::run_approx(cfg, format);
    else if (cfg.command == "estimate") text = detail::run_estimate(cfg, format);
    else if (cfg.command == "integer") text = detail::run_integer(cfg, format);
    else if (cfg.command == "matrix") text = detail::run_matrix(cfg, format);
    else throw ConfigError("unknown command '" + cfg.command + "'");

    if (cfg.output.empty() || cfg.output == "-") {
      res.output = std::move(text);
    } else {
      const auto path = detail::output_path(cfg.output);
      std::ofstream out(path, std::ios::binary);
      if (!out || !(out << text)) throw ConfigError("cannot write '" + path.string() + "'");
    }
    return res;
  } catch (const ParseError& e) {
    return fail(kConfig, detail::error_record("parse_error", e.what(), e.parameter()));
  } catch (const ConfigError& e) {
    return fail(kConfig, detail::error_record("config_error", e.what()));
  } catch (const DomainError& e) {
    return fail(kConfig, detail::error_record("domain_error", e.what()));
  } catch (const UnsupportedOperation& e) {
    return fail(kConfig, detail::error_record("unsupported_operation", e.what()));
  } catch (const AccuracyError& e) {
    Json j = detail::error_record("accuracy_error", e.what());
    j["best_estimate"] = e.best_estimate();
    j["achieved_tolerance"] = e.achieved_tolerance();
    return fail(kAccuracy, j);
  } catch (const OverflowError& e) {
    return fail(kAccuracy, detail::error_record("overflow_error", e.what()));
  } catch (const InsufficientDataError& e) {
    return fail(kAccuracy, detail::error_record("insufficient_data", e.what()));
  } catch (const InfeasibleSpaceError& e) {
    return fail(kInfeasible, detail::error_record("infeasible_space", e.what()));
  } catch (const std::exception& e) {
    return fail(kOther, detail::error_record("internal_error", e.what()));
  }
}

}  // namespace entire::cli
