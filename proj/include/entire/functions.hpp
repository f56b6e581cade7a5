#pragma once

// Taylor-coefficient oracles for the test corpus of analytic and entire
// functions, with their known order / type metadata.

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <memory>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "entire/coefficient.hpp"
#include "entire/errors.hpp"
#include "entire/numerics.hpp"
#include "entire/spec_text.hpp"

namespace entire {

struct OracleMetadata {
  std::optional<double> order;   // rho; 0 for polynomials
  std::optional<double> type;    // sigma at the declared order
  std::optional<double> radius;  // radius of convergence, inf for entire functions
  std::optional<Index> degree;   // set for polynomials
  bool integral = false;         // every coefficient is a Gaussian integer
  bool entire = true;
  // Sorted indices of the nonzero coefficients, for sparse finite oracles.
  std::shared_ptr<const std::vector<Index>> support;
};

/// n -> c_n as (log |c_n|, arg c_n). Immutable and cheap to copy.
class CoefficientOracle {
 public:
  using CoefficientFn = std::function<Coefficient(Index)>;
  using LinearFn = std::function<std::complex<double>(Index)>;

  CoefficientOracle(std::string name, CoefficientFn coeff, OracleMetadata meta, LinearFn linear = {})
      : name_(std::move(name)), coeff_(std::move(coeff)), linear_(std::move(linear)), meta_(meta) {}

  const std::string& name() const noexcept { return name_; }
  const OracleMetadata& metadata() const noexcept { return meta_; }

  Coefficient operator()(Index n) const {
    if (n < 0) throw DomainError("coefficient index must be >= 0");
    if (meta_.degree && n > *meta_.degree) return {};
    return coeff_(n);
  }

  LogReal magnitude(Index n) const { return (*this)(n).magnitude; }

  /// Linear complex value, computed without a log round trip where the
  /// oracle provides a direct evaluator (exact halves stay exact halves).
  /// nullopt when |c_n| is outside [1e-300, 1e300].
  std::optional<std::complex<double>> linear(Index n) const {
    const Coefficient c = (*this)(n);
    auto fallback = c.to_complex();
    if (!linear_ || !fallback) return fallback;
    return linear_(n);
  }

 private:
  std::string name_;
  CoefficientFn coeff_;
  LinearFn linear_;
  OracleMetadata meta_;
};

namespace detail {

inline double phase_of_sign(bool negative) { return negative ? std::numbers::pi : 0.0; }

inline void require_positive(double v, const char* function, const char* parameter) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw DomainError(std::string(function) + ": " + parameter + " must be positive and finite", parameter);
  }
}

}  // namespace detail

/// e^{lambda z}: c_n = lambda^n / n!.  Order 1, type lambda.
inline CoefficientOracle exp_scale(double lambda) {
  detail::require_positive(lambda, "exp", "lambda");
  const double log_lambda = std::log(lambda);
  return CoefficientOracle(
      "exp:lambda=" + text::format_real(lambda),
      [=](Index n) {
        const auto nd = static_cast<double>(n);
        return Coefficient{LogReal::from_log(nd * log_lambda - std::lgamma(nd + 1.0)), 0.0};
      },
      {.order = 1.0, .type = lambda, .radius = kInf},
      [=](Index n) {
        double v = 1.0;
        for (Index k = 1; k <= n; ++k) v *= lambda / static_cast<double>(k);
        return std::complex<double>(v, 0.0);
      });
}

/// cos(sqrt z): c_n = (-1)^n / (2n)!.  Order 1/2, type 1.
inline CoefficientOracle cos_sqrt() {
  return CoefficientOracle(
      "cossqrt",
      [](Index n) {
        return Coefficient{LogReal::from_log(-std::lgamma(2.0 * static_cast<double>(n) + 1.0)),
                           detail::phase_of_sign(n % 2 == 1)};
      },
      {.order = 0.5, .type = 1.0, .radius = kInf},
      [](Index n) {
        double v = 1.0;
        for (Index k = 1; k <= 2 * n; ++k) v /= static_cast<double>(k);
        return std::complex<double>(n % 2 == 1 ? -v : v, 0.0);
      });
}

/// c_n = (e rho sigma / n)^(n/rho), c_0 = 1.  Order rho, type sigma.
inline CoefficientOracle synthetic(double rho, double sigma) {
  detail::require_positive(rho, "synthetic", "rho");
  detail::require_positive(sigma, "synthetic", "sigma");
  const double log_scale = 1.0 + std::log(rho * sigma);
  return CoefficientOracle(
      "synthetic:rho=" + text::format_real(rho) + ",sigma=" + text::format_real(sigma),
      [=](Index n) {
        if (n == 0) return Coefficient{LogReal::one(), 0.0};
        const auto nd = static_cast<double>(n);
        return Coefficient{LogReal::from_log(nd / rho * (log_scale - std::log(nd))), 0.0};
      },
      {.order = rho, .type = sigma, .radius = kInf});
}

/// c_n = n^(-n/rho), c_0 = 1.  Order rho, type 1/(e rho).
inline CoefficientOracle power_order(double rho) {
  detail::require_positive(rho, "power", "rho");
  return CoefficientOracle(
      "power:rho=" + text::format_real(rho),
      [=](Index n) {
        if (n == 0) return Coefficient{LogReal::one(), 0.0};
        const auto nd = static_cast<double>(n);
        return Coefficient{LogReal::from_log(-nd / rho * std::log(nd)), 0.0};
      },
      {.order = rho, .type = 1.0 / (std::numbers::e * rho), .radius = kInf});
}

/// 1/(1 - rz): c_n = r^n, 0 < r < 1.  Radius 1/r, not entire.
inline CoefficientOracle geometric(double r) {
  if (!(r > 0.0) || !(r < 1.0)) throw DomainError("geometric: r must lie in (0, 1)", "r");
  const double log_r = std::log(r);
  return CoefficientOracle(
      "geometric:r=" + text::format_real(r),
      [=](Index n) { return Coefficient{LogReal::from_log(static_cast<double>(n) * log_r), 0.0}; },
      {.radius = 1.0 / r, .entire = false},
      [=](Index n) { return std::complex<double>(std::pow(r, static_cast<double>(n)), 0.0); });
}

/// Finite Taylor polynomial c_0 + c_1 z + ... Order 0 by convention, no type.
inline CoefficientOracle polynomial(std::vector<std::complex<double>> coeffs) {
  while (!coeffs.empty() && coeffs.back() == 0.0) coeffs.pop_back();
  bool integral = true;
  std::string name = "poly:";
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    const auto c = coeffs[k];
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) throw DomainError("poly: coefficients must be finite");
    integral = integral && c.real() == std::round(c.real()) && c.imag() == std::round(c.imag());
    if (k) name += ',';
    name += text::format_real(c.real());
    if (c.imag() != 0.0) name += (c.imag() > 0 ? "+" : "") + text::format_real(c.imag()) + "i";
  }
  if (coeffs.empty()) name += "0";
  auto shared = std::make_shared<const std::vector<std::complex<double>>>(std::move(coeffs));
  const auto degree = static_cast<Index>(shared->size()) - 1;
  return CoefficientOracle(
      std::move(name),
      [shared](Index n) {
        if (n >= static_cast<Index>(shared->size())) return Coefficient{};
        return Coefficient::from_complex((*shared)[static_cast<std::size_t>(n)]);
      },
      {.order = 0.0, .radius = kInf, .degree = std::max<Index>(degree, 0), .integral = integral},
      [shared](Index n) {
        return n < static_cast<Index>(shared->size()) ? (*shared)[static_cast<std::size_t>(n)]
                                                      : std::complex<double>{};
      });
}

/// sum_k z^{n_k} over a strictly increasing exponent list.
inline CoefficientOracle lacunary(std::vector<Index> exponents) {
  for (std::size_t i = 0; i < exponents.size(); ++i) {
    if (exponents[i] < 0) throw DomainError("lacunary: exponents must be >= 0");
    if (i > 0 && exponents[i] <= exponents[i - 1]) throw DomainError("lacunary: exponents must strictly increase");
  }
  std::string name = "lacunary:";
  for (std::size_t i = 0; i < exponents.size(); ++i) name += (i ? "," : "") + std::to_string(exponents[i]);
  const Index degree = exponents.empty() ? 0 : exponents.back();
  auto shared = std::make_shared<const std::vector<Index>>(std::move(exponents));
  auto present = [shared](Index n) { return std::binary_search(shared->begin(), shared->end(), n); };
  return CoefficientOracle(
      std::move(name), [present](Index n) { return present(n) ? Coefficient{LogReal::one(), 0.0} : Coefficient{}; },
      {.order = 0.0, .radius = kInf, .degree = degree, .integral = true, .support = shared},
      [present](Index n) { return std::complex<double>(present(n) ? 1.0 : 0.0, 0.0); });
}

/// lambda * f.
inline CoefficientOracle scaled(const CoefficientOracle& f, std::complex<double> lambda) {
  if (lambda == 0.0 || !std::isfinite(std::abs(lambda))) throw DomainError("scaled: lambda must be nonzero, finite");
  const LogReal mag = LogReal::from_linear(std::abs(lambda));
  const double arg = std::arg(lambda);
  OracleMetadata meta = f.metadata();
  meta.integral = meta.integral && lambda.real() == std::round(lambda.real()) &&
                  lambda.imag() == std::round(lambda.imag());
  std::ostringstream label;
  label << "scaled(" << f.name() << "," << text::format_real(lambda.real());
  if (lambda.imag() != 0.0) label << (lambda.imag() > 0 ? "+" : "") << text::format_real(lambda.imag()) << "i";
  label << ")";
  return CoefficientOracle(
      label.str(),
      [=](Index n) {
        const Coefficient c = f(n);
        return Coefficient{c.magnitude * mag, c.magnitude.is_zero() ? 0.0 : c.phase + arg};
      },
      meta,
      [=](Index n) {
        if (const auto v = f.linear(n)) return *v * lambda;
        const Coefficient c = f(n);
        return std::polar((c.magnitude * mag).linear(), c.phase + arg);
      });
}

/// c_0 .. c_{n-1}: log-scale always, linear where representable.
struct Truncation {
  std::vector<Coefficient> coefficients;
  std::vector<std::optional<std::complex<double>>> linear;
};

inline Truncation truncate(const CoefficientOracle& f, Index n) {
  if (n < 0) throw DomainError("truncate: n must be >= 0");
  Truncation t;
  t.coefficients.reserve(static_cast<std::size_t>(n));
  t.linear.reserve(static_cast<std::size_t>(n));
  for (Index k = 0; k < n; ++k) {
    t.coefficients.push_back(f(k));
    t.linear.push_back(f.linear(k));
  }
  return t;
}

/// Canonical textual names: "exp:lambda=2", "cossqrt", "synthetic:rho=1,sigma=1",
/// "power:rho=2", "geometric:r=0.9", "poly:1,0,0.5", "lacunary:3,15,63".
inline CoefficientOracle parse_function(std::string_view textual) {
  const auto spec = text::split_spec(textual);
  auto real = [](const auto& kv, const char* key, double fallback) {
    auto it = kv.find(key);
    return it == kv.end() ? fallback : text::parse_real(it->second, key);
  };
  try {
    if (spec.name == "exp") {
      auto kv = text::key_values(spec, {"lambda"});
      return exp_scale(real(kv, "lambda", 1.0));
    }
    if (spec.name == "cossqrt") {
      text::key_values(spec, {});
      return cos_sqrt();
    }
    if (spec.name == "synthetic") {
      auto kv = text::key_values(spec, {"rho", "sigma"});
      return synthetic(real(kv, "rho", 1.0), real(kv, "sigma", 1.0));
    }
    if (spec.name == "power") {
      auto kv = text::key_values(spec, {"rho"});
      return power_order(real(kv, "rho", 1.0));
    }
    if (spec.name == "geometric") {
      auto kv = text::key_values(spec, {"r"});
      if (!kv.contains("r")) throw ParseError("r", "geometric: parameter 'r' is required");
      return geometric(real(kv, "r", 0.0));
    }
    if (spec.name == "poly") {
      std::vector<std::complex<double>> coeffs;
      for (auto a : spec.args) coeffs.emplace_back(text::parse_real(a, "poly"), 0.0);
      return polynomial(std::move(coeffs));
    }
    if (spec.name == "lacunary") {
      std::vector<Index> exps;
      for (auto a : spec.args) exps.push_back(text::parse_integer(a, "lacunary"));
      return lacunary(std::move(exps));
    }
  } catch (const DomainError& e) {
    throw ParseError(e.parameter().empty() ? spec.name : e.parameter(),
                     std::string("function '") + std::string(textual) + "': " + e.what());
  }
  throw ParseError("name", "unknown function '" + spec.name + "'");
}

}  // namespace entire
