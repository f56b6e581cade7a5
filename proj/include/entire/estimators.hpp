#pragma once

// Growth estimators from approximation errors:
//   entire        iff  E_n^(1/n) -> 0
//   order    rho  =    limsup n ln n / ln(||z^n|| / E_n)
//   type   sigma  =    limsup (n / (e rho)) (E_n / ||z^n||)^(rho/n)
// and the classical coefficient formulas (E_n replaced by |c_n|, ||z^n|| by 1)
// used to cross-check them.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "entire/approximation.hpp"
#include "entire/errors.hpp"
#include "entire/functions.hpp"
#include "entire/numerics.hpp"

namespace entire {

using Sequence = std::vector<std::pair<Index, double>>;

enum class Verdict { entire, not_entire, inconclusive };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::entire: return "entire";
    case Verdict::not_entire: return "not_entire";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

struct EntiretyThresholds {
  double entire_below = 0.05;      // final-quarter max root
  double not_entire_above = 0.5;   // final-quarter min root
  double slope_entire = -0.1;      // log-log slope of the roots, fallback rule
  double slope_not_entire = -0.02;
};

struct EntiretyResult {
  Sequence roots;  // (n, E_n^(1/n)), n >= 1
  Verdict verdict = Verdict::inconclusive;
  std::string rule;  // "range" or "slope"
};

/// Roots of the exact errors when present, else of the upper bounds.
/// Range rule on the final quarter first; when it is undecided the log-log
/// slope of the final-quarter roots decides (roots ~ n^(-1/rho) for entire f,
/// roots -> 1/R for radius R).
inline EntiretyResult entirety_indicator(const ApproxProfile& profile, const EntiretyThresholds& th = {}) {
  if (profile.entries.empty()) throw DomainError("entirety_indicator: empty profile");
  EntiretyResult out;
  for (const auto& e : profile.entries) {
    if (e.n < 1) continue;
    const auto value = e.surrogate();
    if (!value) continue;
    out.roots.emplace_back(e.n, value->is_zero() ? 0.0 : std::exp(value->log() / static_cast<double>(e.n)));
  }
  const Index from = profile.n_max - profile.n_max / 4;
  double hi = -kInf, lo = kInf;
  std::vector<double> log_n, log_root;
  for (auto [n, r] : out.roots) {
    if (n < from) continue;
    hi = std::max(hi, r);
    lo = std::min(lo, r);
    if (r > 0.0) {
      log_n.push_back(std::log(static_cast<double>(n)));
      log_root.push_back(std::log(r));
    }
  }
  if (hi == -kInf) return out;
  out.rule = "range";
  if (hi < th.entire_below) {
    out.verdict = Verdict::entire;
    return out;
  }
  if (lo > th.not_entire_above) {
    out.verdict = Verdict::not_entire;
    return out;
  }
  if (log_n.size() < 2) return out;
  out.rule = "slope";
  const double slope = fit_slope(log_n, log_root);
  if (slope <= th.slope_entire) out.verdict = Verdict::entire;
  else if (slope > th.slope_not_entire) out.verdict = Verdict::not_entire;
  return out;
}

struct LimitEstimate {
  Sequence sequence;
  std::optional<double> extrapolated;
  std::optional<double> running_max;  // max over the final half
  Index window_lo = 0;
  Index window_hi = 0;
};

inline constexpr std::size_t kMinUsableEntries = 32;

namespace detail {

/// The order sequence behaves like x_n = 1/rho_n = a + b/ln n + c/n + d/(n ln n):
/// the 1/ln n term carries ln(e rho sigma), the 1/n terms carry log ||z^n||
/// and sub-exponential factors, and f -> lambda f moves only d. The intercept
/// a is fitted by least squares over the final half [N/2, N].
inline LimitEstimate extrapolate_order(Sequence seq) {
  if (seq.size() < kMinUsableEntries) {
    throw InsufficientDataError("order estimate: " + std::to_string(seq.size()) + " usable entries, need " +
                                std::to_string(kMinUsableEntries));
  }
  LimitEstimate out;
  out.window_hi = seq.back().first;
  out.window_lo = out.window_hi / 2;
  std::vector<std::vector<double>> cols(4);
  std::vector<double> y;
  double best = -kInf;
  for (auto [n, rho_n] : seq) {
    if (n < out.window_lo) continue;
    const auto nd = static_cast<double>(n);
    const double ln = std::log(nd);
    cols[0].push_back(1.0);
    cols[1].push_back(1.0 / ln);
    cols[2].push_back(1.0 / nd);
    cols[3].push_back(1.0 / (nd * ln));
    y.push_back(1.0 / rho_n);
    best = std::max(best, rho_n);
  }
  out.running_max = best;
  if (y.size() >= 8) {
    try {
      const auto x = least_squares(cols, y);
      if (x[0] > 0.0) out.extrapolated = 1.0 / x[0];
    } catch (const DomainError&) {
      // degenerate window; the running max stands alone
    }
  }
  out.sequence = std::move(seq);
  return out;
}

inline double final_half_max(const Sequence& seq) {
  if (seq.empty()) throw InsufficientDataError("type estimate: no usable entries");
  const Index from = seq.back().first / 2;
  double best = -kInf;
  for (auto [n, v] : seq) {
    if (n >= from) best = std::max(best, v);
  }
  return best;
}

struct UsableEntry {
  Index n;
  double log_error;
  double log_norm;
};

// E_n > 0 and ||z^n|| / E_n > 1, n >= 2.
inline std::vector<UsableEntry> usable_entries(const ApproxProfile& profile, bool use_exact) {
  std::vector<UsableEntry> out;
  for (const auto& e : profile.entries) {
    if (e.n < 2) continue;
    const auto value = use_exact ? e.surrogate() : e.upper;
    if (!value || value->is_zero()) continue;
    const double gap = e.monomial_norm.log() - value->log();
    if (!(gap > 0.0) || !std::isfinite(gap)) continue;
    out.push_back({e.n, value->log(), e.monomial_norm.log()});
  }
  return out;
}

}  // namespace detail

/// rho_n = n ln n / ln(||z^n|| / E_n) and its extrapolated limit.
inline LimitEstimate order_estimate(const ApproxProfile& profile, bool use_exact = true) {
  Sequence seq;
  for (const auto& u : detail::usable_entries(profile, use_exact)) {
    const auto nd = static_cast<double>(u.n);
    seq.emplace_back(u.n, nd * std::log(nd) / (u.log_norm - u.log_error));
  }
  return detail::extrapolate_order(std::move(seq));
}

struct TypeEstimate {
  Sequence sequence;
  double sigma_hat = 0.0;  // max over the final half
};

/// sigma_n = (n / (e rho)) (E_n / ||z^n||)^(rho/n).
inline TypeEstimate type_estimate(const ApproxProfile& profile, double rho, bool use_exact = true) {
  if (!(rho > 0.0) || !std::isfinite(rho)) throw DomainError("type_estimate: rho must be positive");
  TypeEstimate out;
  for (const auto& u : detail::usable_entries(profile, use_exact)) {
    const auto nd = static_cast<double>(u.n);
    out.sequence.emplace_back(
        u.n, std::exp(std::log(nd / (std::numbers::e * rho)) + rho / nd * (u.log_error - u.log_norm)));
  }
  out.sigma_hat = detail::final_half_max(out.sequence);
  return out;
}

/// limsup n ln n / (-ln |c_n|) over 2 <= n <= N, same extrapolation.
inline LimitEstimate coefficient_order_estimate(const CoefficientOracle& f, Index big_n) {
  if (big_n < 64) throw DomainError("coefficient_order: N must be >= 64");
  Sequence seq;
  for (Index n = 2; n <= big_n; ++n) {
    const LogReal c = f.magnitude(n);
    if (c.is_zero() || !(c.log() < 0.0)) continue;
    const auto nd = static_cast<double>(n);
    seq.emplace_back(n, nd * std::log(nd) / -c.log());
  }
  return detail::extrapolate_order(std::move(seq));
}

inline double coefficient_order(const CoefficientOracle& f, Index big_n) {
  const auto est = coefficient_order_estimate(f, big_n);
  return est.extrapolated ? *est.extrapolated : *est.running_max;
}

/// limsup (n / (e rho)) |c_n|^(rho/n), as the max over n in [N/2, N].
inline double coefficient_type(const CoefficientOracle& f, double rho, Index big_n) {
  if (!(rho > 0.0) || !std::isfinite(rho)) throw DomainError("coefficient_type: rho must be positive");
  if (big_n < 1) throw DomainError("coefficient_type: N must be >= 1");
  Sequence seq;
  for (Index n = 1; n <= big_n; ++n) {
    const LogReal c = f.magnitude(n);
    if (c.is_zero()) continue;
    const auto nd = static_cast<double>(n);
    seq.emplace_back(n, std::exp(std::log(nd / (std::numbers::e * rho)) + rho / nd * c.log()));
  }
  return detail::final_half_max(seq);
}

struct EstimateOptions {
  Index n_max = 2000;
  std::optional<Index> tail_budget;
  std::optional<double> rho;  // order used for the type formulas; default: rho_hat
  bool use_exact = true;      // false: use the upper bound even where E_n is exact
  EntiretyThresholds thresholds;
};

struct EstimateReport {
  std::string space;
  std::string function;
  Index n_max = 0;
  std::string source;  // "exact" or "upper"

  Sequence root_sequence;
  Verdict verdict = Verdict::inconclusive;
  std::string verdict_rule;

  Sequence order_sequence;
  std::optional<double> rho_hat;
  std::optional<double> rho_running_max;
  Index window_lo = 0;
  Index window_hi = 0;

  std::optional<double> rho_used;
  std::string rho_source;  // "declared" or "estimated"
  Sequence type_sequence;
  std::optional<double> sigma_hat;

  std::optional<double> rho_coeff;
  std::optional<double> sigma_coeff;

  double mu_lower = 0.0;
  double mu_upper = 0.0;
  bool mu_flag = false;  // the probes differ by more than 1e-3

  std::vector<std::string> notes;
};

inline EstimateReport estimate(const ApproxProfile& profile, const CoefficientOracle& f,
                               const EstimateOptions& opt = {}) {
  EstimateReport r;
  r.space = profile.space.to_string();
  r.function = profile.function;
  r.n_max = profile.n_max;
  r.source = profile.separable && opt.use_exact ? "exact" : "upper";

  {
    // Root probes of ||z^n|| over the final half.
    std::vector<NormEntry> norms;
    for (const auto& e : profile.entries) norms.push_back({e.n, NormValue::exact(e.monomial_norm)});
    const auto st = root_statistics(norms);
    r.mu_lower = st.mu_lower;
    r.mu_upper = st.mu_upper;
    r.mu_flag = std::abs(st.mu_upper - st.mu_lower) > 1e-3;
  }

  const auto ent = entirety_indicator(profile, opt.thresholds);
  r.root_sequence = ent.roots;
  r.verdict = ent.verdict;
  r.verdict_rule = ent.rule;
  if (r.verdict != Verdict::entire) {
    r.notes.push_back("order and type skipped: verdict is " + std::string(to_string(r.verdict)));
    return r;
  }

  try {
    auto order = order_estimate(profile, opt.use_exact);
    r.order_sequence = std::move(order.sequence);
    r.rho_hat = order.extrapolated;
    r.rho_running_max = order.running_max;
    r.window_lo = order.window_lo;
    r.window_hi = order.window_hi;
  } catch (const InsufficientDataError& e) {
    r.notes.push_back(e.what());
  }

  if (opt.rho) {
    r.rho_used = opt.rho;
    r.rho_source = "declared";
  } else if (r.rho_hat) {
    r.rho_used = r.rho_hat;
    r.rho_source = "estimated";
  }

  if (r.rho_used) {
    try {
      auto type = type_estimate(profile, *r.rho_used, opt.use_exact);
      r.type_sequence = std::move(type.sequence);
      r.sigma_hat = type.sigma_hat;
    } catch (const InsufficientDataError& e) {
      r.notes.push_back(e.what());
    }
  }

  if (profile.n_max >= 64) {
    try {
      r.rho_coeff = coefficient_order(f, profile.n_max);
      if (r.rho_used) r.sigma_coeff = coefficient_type(f, *r.rho_used, profile.n_max);
    } catch (const InsufficientDataError& e) {
      r.notes.push_back(std::string("coefficient route: ") + e.what());
    }
  }
  return r;
}

inline EstimateReport estimate(const SpaceSpec& space, const CoefficientOracle& f, const EstimateOptions& opt = {}) {
  return estimate(approx_profile(space, f, opt.n_max, opt.tail_budget), f, opt);
}

struct CrossCheck {
  bool pass = false;
  std::optional<double> rho_delta;    // |rho_hat - rho_coeff| / rho_coeff
  std::optional<double> sigma_delta;  // |sigma_hat - sigma_coeff| / sigma_coeff
  std::string reason;
};

inline CrossCheck cross_check(const EstimateReport& r, double rho_tolerance, double sigma_tolerance) {
  CrossCheck c;
  if (r.rho_hat && r.rho_coeff) c.rho_delta = std::abs(*r.rho_hat - *r.rho_coeff) / *r.rho_coeff;
  if (r.sigma_hat && r.sigma_coeff) c.sigma_delta = std::abs(*r.sigma_hat - *r.sigma_coeff) / *r.sigma_coeff;
  if (!c.rho_delta) {
    c.reason = !r.rho_hat ? "rho_hat absent" : "rho_coeff absent";
    return c;
  }
  if (!c.sigma_delta) {
    c.reason = !r.sigma_hat ? "sigma_hat absent" : "sigma_coeff absent";
    return c;
  }
  const bool rho_ok = *c.rho_delta <= rho_tolerance;
  const bool sigma_ok = *c.sigma_delta <= sigma_tolerance;
  c.pass = rho_ok && sigma_ok;
  if (!rho_ok) c.reason = "rho delta exceeds tolerance";
  else if (!sigma_ok) c.reason = "sigma delta exceeds tolerance";
  return c;
}

inline CrossCheck cross_check(const EstimateReport& r, double tolerance) {
  return cross_check(r, tolerance, tolerance);
}

}  // namespace entire
