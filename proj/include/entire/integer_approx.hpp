#pragma once

// Approximation by polynomials with Gaussian-integer coefficients.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "entire/approximation.hpp"
#include "entire/errors.hpp"
#include "entire/functions.hpp"
#include "entire/numerics.hpp"
#include "entire/spaces.hpp"

namespace entire {

struct GaussianInt {
  std::int64_t re = 0;
  std::int64_t im = 0;

  std::complex<double> value() const { return {static_cast<double>(re), static_cast<double>(im)}; }
  friend bool operator==(const GaussianInt&, const GaussianInt&) = default;
};

/// Coefficients a_0..a_d with a_d != 0; the zero polynomial has no
/// coefficients and degree -1.
class GaussianIntPolynomial {
 public:
  GaussianIntPolynomial() = default;
  explicit GaussianIntPolynomial(std::vector<GaussianInt> coeffs) : coeffs_(std::move(coeffs)) {
    while (!coeffs_.empty() && coeffs_.back() == GaussianInt{}) coeffs_.pop_back();
  }

  const std::vector<GaussianInt>& coefficients() const noexcept { return coeffs_; }
  Index degree() const noexcept { return static_cast<Index>(coeffs_.size()) - 1; }
  bool is_zero() const noexcept { return coeffs_.empty(); }

  GaussianInt operator[](Index k) const {
    return k >= 0 && k < static_cast<Index>(coeffs_.size()) ? coeffs_[static_cast<std::size_t>(k)] : GaussianInt{};
  }

  friend bool operator==(const GaussianIntPolynomial&, const GaussianIntPolynomial&) = default;

 private:
  std::vector<GaussianInt> coeffs_;
};

namespace detail {

inline constexpr double kTinyLog = -690.7755278982137;  // log(1e-300)

// Nearest integer, halves away from zero.
inline std::int64_t round_component(double x) {
  const double r = std::round(x);
  if (!(std::abs(r) < 9.2e18)) throw OverflowError("rounded coefficient exceeds the 64-bit integer range");
  return static_cast<std::int64_t>(r);
}

// Rounded c_k plus the residual |c_k - round(c_k)| in log scale; nullopt when
// c_k is too large to materialize.
inline std::optional<std::pair<GaussianInt, LogReal>> round_coefficient(const CoefficientOracle& f, Index k) {
  const Coefficient c = f(k);
  if (c.magnitude.is_zero()) return std::pair{GaussianInt{}, LogReal::zero()};
  if (c.magnitude.log() < kTinyLog) return std::pair{GaussianInt{}, c.magnitude};
  const auto v = f.linear(k);
  if (!v) return std::nullopt;
  const GaussianInt g{round_component(v->real()), round_component(v->imag())};
  return std::pair{g, LogReal::from_linear(std::abs(*v - g.value()))};
}

}  // namespace detail

/// Componentwise rounding of c_0..c_{n-1}.
inline GaussianIntPolynomial round_to_integer_poly(const CoefficientOracle& f, Index n) {
  if (n < 0) throw DomainError("round_to_integer_poly: n must be >= 0");
  std::vector<GaussianInt> out;
  out.reserve(static_cast<std::size_t>(n));
  for (Index k = 0; k < n; ++k) {
    auto r = detail::round_coefficient(f, k);
    if (!r) throw OverflowError("round_to_integer_poly: coefficient " + std::to_string(k) + " is not representable");
    out.push_back(r->first);
  }
  return GaussianIntPolynomial(std::move(out));
}

/// log max_{k<n} dist(c_k, Z[i]) ||z^k||: a lower bound on the distance from f
/// to every polynomial of degree < n with Gaussian-integer coefficients.
/// Coefficients too large to materialize are skipped.
inline LogReal obstruction_lower_bound(const SpaceSpec& space, const CoefficientOracle& f, Index n) {
  if (n < 1) throw DomainError("obstruction_lower_bound: n must be >= 1");
  MonomialNormTable norms(space);
  LogReal best;
  for (Index k = 0; k < n; ++k) {
    const auto r = detail::round_coefficient(f, k);
    if (!r || r->second.is_zero()) continue;
    best = std::max(best, r->second * norms(k).lower);
  }
  return best;
}

/// log ||f - round_to_integer_poly(f, n)|| in a coefficient-separable space.
inline LogReal integer_approx_error(const SpaceSpec& space, const CoefficientOracle& f, Index n,
                                    std::optional<Index> tail_budget = std::nullopt) {
  if (n < 0) throw DomainError("integer_approx_error: n must be >= 0");
  const auto form = require_separable(space, "integer_approx_error");
  MonomialNormTable norms(space);
  LogSumAccumulator acc;
  for (Index k = 0; k < n; ++k) {
    const auto r = detail::round_coefficient(f, k);
    if (!r) throw OverflowError("integer_approx_error: coefficient " + std::to_string(k) + " is not representable");
    if (!r->second.is_zero()) acc.add((r->second * norms(k).value).pow(form.p));
  }
  const LogReal tail = detail::exact_error(norms, form.p, f, n, detail::resolve_budget(tail_budget, n));
  acc.add(tail.pow(form.p));
  return acc.sum().pow(1.0 / form.p);
}

struct LacunaryResult {
  std::vector<Index> exponents;
  CoefficientOracle oracle;
};

inline constexpr Index kLacunarySearchCap = Index{1} << 30;

/// Minimal n_1 < ... < n_K with ||z^{n_k}|| <= 2^-k, and f = sum_k z^{n_k}.
/// Searches by doubling then bisection, assuming ||z^n|| is eventually
/// nonincreasing past each found exponent.
inline LacunaryResult lacunary_construct(const SpaceSpec& space, Index count,
                                         Index search_cap = kLacunarySearchCap) {
  if (count < 1) throw DomainError("lacunary_construct: K must be >= 1");
  std::vector<Index> exps;
  Index prev = -1;
  for (Index k = 1; k <= count; ++k) {
    const double target = -static_cast<double>(k) * std::numbers::ln2;
    auto ok = [&](Index n) {
      const double v = monomial_norm(space, n).value.log();
      return v <= target + 1e-12 * std::abs(target);
    };
    const Index base = prev + 1;
    Index good = base;
    if (!ok(base)) {
      Index bad = base;
      for (Index step = 1;; step *= 2) {
        const Index probe = std::min(base + step, search_cap);
        if (ok(probe)) {
          good = probe;
          break;
        }
        if (probe >= search_cap) {
          throw InfeasibleSpaceError("lacunary_construct: no n <= " + std::to_string(search_cap) +
                                     " with ||z^n|| <= 2^-" + std::to_string(k) + " in " + space.to_string() +
                                     "; inf ||z^n|| > 0 rules out the construction");
        }
        bad = probe;
      }
      Index lo = bad + 1;
      while (lo < good) {
        const Index mid = lo + (good - lo) / 2;
        if (ok(mid)) good = mid;
        else lo = mid + 1;
      }
    }
    exps.push_back(good);
    prev = good;
  }
  auto oracle = lacunary(exps);
  return {std::move(exps), std::move(oracle)};
}

enum class Trend { decreasing_to_zero, bounded_below };

inline const char* to_string(Trend t) {
  return t == Trend::decreasing_to_zero ? "decreasing_to_zero" : "bounded_below";
}

struct InfimumProbe {
  LogReal infimum;
  Index argmin = 0;
  double slope = 0.0;  // of log ||z^n|| against log n over [n_max/10, n_max]
  Trend trend = Trend::bounded_below;
};

inline InfimumProbe infimum_probe(const SpaceSpec& space, Index n_max) {
  if (n_max < 100) throw DomainError("infimum_probe: n_max must be >= 100");
  InfimumProbe out;
  out.infimum = LogReal::from_log(kInf);
  std::vector<double> xs, ys;
  for (Index n = 0; n <= n_max; ++n) {
    const LogReal v = monomial_norm(space, n).value;
    if (v < out.infimum) {
      out.infimum = v;
      out.argmin = n;
    }
    if (n >= n_max / 10) {
      xs.push_back(std::log(static_cast<double>(n)));
      ys.push_back(v.log());
    }
  }
  out.slope = fit_slope(xs, ys);
  out.trend = out.slope < -0.1 ? Trend::decreasing_to_zero : Trend::bounded_below;
  return out;
}

}  // namespace entire
