#pragma once

// CSV / JSON / table renderings of profiles and reports. Layouts are fixed;
// see docs/formats.md.

#include <cmath>
#include <cstdio>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "entire/approximation.hpp"
#include "entire/estimators.hpp"
#include "entire/integer_approx.hpp"
#include "entire/spaces.hpp"

namespace entire::io {

using Json = nlohmann::ordered_json;

/// Linear value with 12 significant digits, e.g. "1.23456789012e-05",
/// formatted from the logarithm so values beyond double range still print.
/// Zero prints as "0".
inline std::string format_linear(LogReal v) {
  if (v.is_zero()) return "0";
  if (!v.is_finite()) return "inf";
  char buf[64];
  if (std::abs(v.log()) < 700.0) {
    std::snprintf(buf, sizeof buf, "%.11e", v.linear());
    return buf;
  }
  const double l10 = v.log() / std::numbers::ln10;
  double e = std::floor(l10);
  char mant[32];
  std::snprintf(mant, sizeof mant, "%.11f", std::pow(10.0, l10 - e));
  if (mant[0] == '1' && mant[1] == '0') {  // mantissa rounded up to 10
    e += 1.0;
    std::snprintf(mant, sizeof mant, "%.11f", std::pow(10.0, l10 - e));
  }
  std::snprintf(buf, sizeof buf, "%se%+03d", mant, static_cast<int>(e));
  return buf;
}

inline std::string format_linear(const std::optional<LogReal>& v) { return v ? format_linear(*v) : ""; }

/// Log value for JSON: a number, or the strings "-inf" / "inf".
inline Json log_value(LogReal v) {
  if (v.is_zero()) return "-inf";
  if (!v.is_finite()) return "inf";
  return v.log();
}

inline Json log_value(const std::optional<LogReal>& v) { return v ? log_value(*v) : Json(nullptr); }

inline Json optional_number(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

inline Json sequence(const Sequence& seq) {
  Json out = Json::array();
  for (auto [n, v] : seq) out.push_back(Json::array({n, v}));
  return out;
}

// ---------------------------------------------------------------------------
// NormProfile
// ---------------------------------------------------------------------------

inline const char* to_string(NormKind k) { return k == NormKind::exact ? "exact" : "bracketed"; }

inline std::string to_csv(const NormProfile& p) {
  std::ostringstream os;
  os << "n,norm,lower,upper,kind\n";
  for (const auto& e : p.entries) {
    os << e.n << ',' << format_linear(e.norm.value) << ',' << format_linear(e.norm.lower) << ','
       << format_linear(e.norm.upper) << ',' << to_string(e.norm.kind) << '\n';
  }
  return os.str();
}

inline Json to_json(const NormProfile& p) {
  Json entries = Json::array();
  for (const auto& e : p.entries) {
    entries.push_back({{"n", e.n},
                       {"log_norm", log_value(e.norm.value)},
                       {"kind", to_string(e.norm.kind)},
                       {"log_lower", log_value(e.norm.lower)},
                       {"log_upper", log_value(e.norm.upper)}});
  }
  const auto& st = p.root_stats;
  return {{"schema", "entire/norm_profile/v1"},
          {"space", p.space.to_string()},
          {"entries", entries},
          {"root_stats",
           {{"mu_lower", st.mu_lower},
            {"mu_upper", st.mu_upper},
            {"log_infimum", log_value(st.infimum)},
            {"infimum_at", st.infimum_at}}}};
}

// ---------------------------------------------------------------------------
// ApproxProfile
// ---------------------------------------------------------------------------

inline const char* to_string(EntryStatus s) { return s == EntryStatus::ok ? "ok" : "accuracy_failed"; }

inline std::string to_csv(const ApproxProfile& p) {
  std::ostringstream os;
  os << "n,lower,exact,upper\n";
  for (const auto& e : p.entries) {
    os << e.n << ',' << format_linear(e.lower) << ',' << format_linear(e.exact) << ',' << format_linear(e.upper)
       << '\n';
  }
  return os.str();
}

inline Json to_json(const ApproxProfile& p) {
  Json entries = Json::array();
  for (const auto& e : p.entries) {
    Json row = {{"n", e.n},
                {"log_lower", log_value(e.lower)},
                {"log_exact", log_value(e.exact)},
                {"log_upper", log_value(e.upper)},
                {"log_monomial_norm", log_value(e.monomial_norm)},
                {"status", to_string(e.status)}};
    if (!e.note.empty()) row["note"] = e.note;
    entries.push_back(std::move(row));
  }
  return {{"schema", "entire/approx_profile/v1"},
          {"space", p.space.to_string()},
          {"function", p.function},
          {"n_max", p.n_max},
          {"tail_budget", p.tail_budget ? Json(*p.tail_budget) : Json("10n+200")},
          {"separable", p.separable},
          {"entries", entries}};
}

// ---------------------------------------------------------------------------
// EstimateReport
// ---------------------------------------------------------------------------

inline Json to_json(const CrossCheck& c) {
  return {{"pass", c.pass},
          {"rho_delta", optional_number(c.rho_delta)},
          {"sigma_delta", optional_number(c.sigma_delta)},
          {"reason", c.reason}};
}

inline Json to_json(const EstimateReport& r, const CrossCheck& check) {
  return {{"schema", "entire/estimate_report/v1"},
          {"space", r.space},
          {"function", r.function},
          {"n_max", r.n_max},
          {"source", r.source},
          {"verdict", to_string(r.verdict)},
          {"verdict_rule", r.verdict_rule},
          {"rho_hat", optional_number(r.rho_hat)},
          {"rho_running_max", optional_number(r.rho_running_max)},
          {"window", Json::array({r.window_lo, r.window_hi})},
          {"rho_used", optional_number(r.rho_used)},
          {"rho_source", r.rho_source},
          {"sigma_hat", optional_number(r.sigma_hat)},
          {"rho_coeff", optional_number(r.rho_coeff)},
          {"sigma_coeff", optional_number(r.sigma_coeff)},
          {"mu_lower", r.mu_lower},
          {"mu_upper", r.mu_upper},
          {"mu_flag", r.mu_flag},
          {"cross_check", to_json(check)},
          {"notes", r.notes},
          {"root_sequence", sequence(r.root_sequence)},
          {"order_sequence", sequence(r.order_sequence)},
          {"type_sequence", sequence(r.type_sequence)}};
}

inline std::string fixed(const std::optional<double>& v, int digits = 6) {
  if (!v) return "-";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, *v);
  return buf;
}

inline std::string to_table(const EstimateReport& r, const CrossCheck& check) {
  std::ostringstream os;
  auto line = [&](const char* key, const std::string& value) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%-16s", key);
    os << buf << value << '\n';
  };
  line("space", r.space);
  line("function", r.function);
  line("n_max", std::to_string(r.n_max));
  line("source", r.source);
  line("verdict", std::string(to_string(r.verdict)) + (r.verdict_rule.empty() ? "" : " (" + r.verdict_rule + ")"));
  line("rho_hat", fixed(r.rho_hat));
  line("rho_running_max", fixed(r.rho_running_max));
  line("rho_coeff", fixed(r.rho_coeff));
  line("rho_used", fixed(r.rho_used) + (r.rho_source.empty() ? "" : " (" + r.rho_source + ")"));
  line("sigma_hat", fixed(r.sigma_hat));
  line("sigma_coeff", fixed(r.sigma_coeff));
  line("mu", fixed(r.mu_lower) + " .. " + fixed(r.mu_upper) + (r.mu_flag ? " (flagged)" : ""));
  line("cross_check", std::string(check.pass ? "pass" : "fail") + " rho_delta=" + fixed(check.rho_delta) +
                          " sigma_delta=" + fixed(check.sigma_delta) +
                          (check.reason.empty() ? "" : " (" + check.reason + ")"));
  for (const auto& n : r.notes) line("note", n);
  return os.str();
}

// ---------------------------------------------------------------------------
// Integer polynomials
// ---------------------------------------------------------------------------

inline Json to_json(const GaussianIntPolynomial& p) {
  Json out = Json::array();
  for (const auto& c : p.coefficients()) out.push_back(Json::array({c.re, c.im}));
  return out;
}

}  // namespace entire::io
