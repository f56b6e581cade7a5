#pragma once

// Best polynomial approximation errors E_n(f) = inf_{deg p < n} ||f - p||.
//
// Every space gets the coefficient sandwich
//     |c_n| ||z^n||  <=  E_n(f)  <=  sum_{k>=n} |c_k| ||z^k||,
// and coefficient-separable spaces additionally get the exact value
//     E_n(f) = (sum_{k>=n} |c_k|^p alpha_k)^(1/p),
// since truncation is optimal there. All values are in log scale.

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "entire/errors.hpp"
#include "entire/functions.hpp"
#include "entire/numerics.hpp"
#include "entire/spaces.hpp"

namespace entire {

/// Terms summed beyond n when no explicit budget is given.
inline Index default_tail_budget(Index n) { return 10 * n + 200; }

namespace detail {

inline constexpr double kTailCutoff = -41.44653167389282;  // log(1e-18)
inline constexpr int kDecreasingRun = 8;

/// sum_{k=n}^{...} term(k) under the tail stopping rule: stop once the term is
/// below 1e-18 of the running sum after 8 consecutive nonincreasing terms.
/// At the budget cap, a tail whose last 8 term ratios are below 1 and
/// nonincreasing is closed with the geometric remainder t q / (1 - q);
/// anything else is an AccuracyError carrying the partial sum.
template <class Term>
LogReal tail_sum(Term&& term, Index n, Index budget, std::optional<Index> degree, const char* what) {
  if (budget < 0) throw DomainError(std::string(what) + ": tail budget must be >= 0");
  Index end = n + budget;
  bool finite_series = false;
  if (degree) {
    if (n > *degree) return LogReal::zero();
    if (*degree <= end) {
      end = *degree;
      finite_series = true;
    }
  }

  LogSumAccumulator acc;
  LogReal prev;
  int run = 0;
  std::array<double, kDecreasingRun> ratios{};
  int ratio_count = 0;  // consecutive valid log-ratios stored, capped at the ring size
  Index ring = 0;
  for (Index k = n; k <= end; ++k) {
    const LogReal t = term(k);
    acc.add(t);
    if (k > n) {
      run = t <= prev ? run + 1 : 0;
      if (t.is_finite() && prev.is_finite()) {
        ratios[static_cast<std::size_t>(ring++ % kDecreasingRun)] = t.log() - prev.log();
        ratio_count = std::min(ratio_count + 1, kDecreasingRun);
      } else {
        ratio_count = 0;
      }
    }
    prev = t;
    const LogReal s = acc.sum();
    if (run >= kDecreasingRun && (t.is_zero() || t.log() < s.log() + kTailCutoff)) return s;
  }
  const LogReal partial = acc.sum();
  if (finite_series) return partial;

  if (ratio_count == kDecreasingRun) {
    bool geometric = true;
    double last = 0.0;
    for (int i = 0; i < kDecreasingRun; ++i) {
      const double r = ratios[static_cast<std::size_t>((ring + i) % kDecreasingRun)];
      if (!(r < 0.0) || (i > 0 && r > last + 1e-12)) geometric = false;
      last = r;
    }
    if (geometric) {
      // Every later ratio is at most q = e^last.
      const LogReal remainder = LogReal::from_log(prev.log() + last - std::log(-std::expm1(last)));
      return partial + remainder;
    }
  }
  const double relative = prev.is_zero() ? 0.0 : std::exp(prev.log() - partial.log());
  throw AccuracyError(std::string(what) + ": tail did not settle within budget " + std::to_string(budget),
                      partial.log(), relative);
}

/// tail_sum, or a plain finite sum over the nonzero indices of sparse oracles.
template <class Term>
LogReal series_tail(Term&& term, const CoefficientOracle& f, Index n, Index budget, const char* what) {
  if (const auto& support = f.metadata().support) {
    LogSumAccumulator acc;
    for (auto it = std::lower_bound(support->begin(), support->end(), n); it != support->end(); ++it) {
      acc.add(term(*it));
    }
    return acc.sum();
  }
  return tail_sum(term, n, budget, f.metadata().degree, what);
}

inline Index resolve_budget(std::optional<Index> budget, Index n) {
  return budget ? *budget : default_tail_budget(n);
}

inline LogReal lower_bound(MonomialNormTable& norms, const CoefficientOracle& f, Index n) {
  const LogReal c = f.magnitude(n);
  if (c.is_zero()) return c;
  return c * norms(n).lower;
}

inline LogReal upper_bound(MonomialNormTable& norms, const CoefficientOracle& f, Index n, Index budget) {
  auto term = [&](Index k) {
    const LogReal c = f.magnitude(k);
    return c.is_zero() ? c : c * norms(k).upper;
  };
  return series_tail(term, f, n, budget, "upper_bound");
}

inline LogReal exact_error(MonomialNormTable& norms, double p, const CoefficientOracle& f, Index n, Index budget) {
  // In a separable space alpha_k = ||z^k||^p, so each term is (|c_k| ||z^k||)^p.
  auto term = [&](Index k) {
    const LogReal c = f.magnitude(k);
    return c.is_zero() ? c : (c * norms(k).value).pow(p);
  };
  return series_tail(term, f, n, budget, "exact_error").pow(1.0 / p);
}

}  // namespace detail

/// log(|c_n| ||z^n||); the BMOA bracket contributes its lower end.
inline LogReal lower_bound(const SpaceSpec& space, const CoefficientOracle& f, Index n) {
  if (n < 0) throw DomainError("lower_bound: n must be >= 0");
  MonomialNormTable norms(space);
  return detail::lower_bound(norms, f, n);
}

/// log sum_{k>=n} |c_k| ||z^k||; the BMOA bracket contributes its upper end.
inline LogReal upper_bound(const SpaceSpec& space, const CoefficientOracle& f, Index n,
                           std::optional<Index> tail_budget = std::nullopt) {
  if (n < 0) throw DomainError("upper_bound: n must be >= 0");
  MonomialNormTable norms(space);
  return detail::upper_bound(norms, f, n, detail::resolve_budget(tail_budget, n));
}

/// log E_n(f) in a coefficient-separable space.
inline LogReal exact_error(const SpaceSpec& space, const CoefficientOracle& f, Index n,
                           std::optional<Index> tail_budget = std::nullopt) {
  if (n < 0) throw DomainError("exact_error: n must be >= 0");
  const auto form = require_separable(space, "exact_error");
  MonomialNormTable norms(space);
  return detail::exact_error(norms, form.p, f, n, detail::resolve_budget(tail_budget, n));
}

enum class EntryStatus { ok, accuracy_failed };

struct ApproxEntry {
  Index n = 0;
  LogReal lower;
  std::optional<LogReal> exact;
  std::optional<LogReal> upper;
  LogReal monomial_norm;  // bracket midpoint for BMOA
  EntryStatus status = EntryStatus::ok;
  std::string note;  // accuracy failure message

  /// The E_n value estimators consume: exact when present, else the upper bound.
  std::optional<LogReal> surrogate() const { return exact ? exact : upper; }
};

struct ApproxProfile {
  SpaceSpec space;
  std::string function;
  Index n_max = 0;
  std::optional<Index> tail_budget;  // nullopt: 10 n + 200 per entry
  bool separable = false;
  std::vector<ApproxEntry> entries;
};

/// Entries n = 0..n_max. Accuracy failures mark the entry (missing values,
/// status accuracy_failed) instead of aborting the profile.
inline ApproxProfile approx_profile(const SpaceSpec& space, const CoefficientOracle& f, Index n_max,
                                    std::optional<Index> tail_budget = std::nullopt) {
  if (n_max < 1) throw DomainError("approx_profile: n_max must be >= 1");
  const auto form = separable_form(space);
  ApproxProfile prof{space, f.name(), n_max, tail_budget, form.has_value(), {}};
  prof.entries.reserve(static_cast<std::size_t>(n_max) + 1);
  MonomialNormTable norms(space);
  for (Index n = 0; n <= n_max; ++n) {
    ApproxEntry e;
    e.n = n;
    e.monomial_norm = norms(n).value;
    e.lower = detail::lower_bound(norms, f, n);
    const Index budget = detail::resolve_budget(tail_budget, n);
    try {
      e.upper = detail::upper_bound(norms, f, n, budget);
    } catch (const AccuracyError& err) {
      e.status = EntryStatus::accuracy_failed;
      e.note = err.what();
    }
    if (form) {
      try {
        e.exact = detail::exact_error(norms, form->p, f, n, budget);
      } catch (const AccuracyError& err) {
        e.status = EntryStatus::accuracy_failed;
        if (e.note.empty()) e.note = err.what();
      }
    }
    prof.entries.push_back(std::move(e));
  }
  return prof;
}

}  // namespace entire
