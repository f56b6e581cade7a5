#pragma once

// Catalog of Banach spaces of functions analytic in the unit disk, with
// monomial norms ||z^n||, coefficient-separable full norms and the
// convolution coefficient map f * g.
//
// Monomial norms are derived from each space's norm definition:
//
//   disk algebra, Hardy H_p       1
//   Bergman H'_p                  (2 / (np + 2))^(1/p)
//   weighted Bergman              (2 int_0^1 t^(np+1) rho(t) dt)^(1/p)
//   A_p, 0 < p < 1                B(n + 1, 1/p - 1)
//   B_{p,q,lambda}, lambda < inf  B(lambda n + 1, lambda pq/(q-p) + 1)^(1/lambda)
//                   lambda = inf  sup_r r^n (1-r)^(pq/(q-p))
//   H^{p,q,alpha},  q < inf       B(nq + 1, q alpha)^(1/q)
//                   q = inf       sup_r r^n (1-r)^alpha
//   Bloch-type B_alpha            1 (n = 0);  sup_r n r^(n-1) (1-r^2)^alpha
//   Dynkin A^s_{p,q}              {int_0^1 (omega_m(t)/t^s)^q dt/t}^(1/q) + 1
//   Dirichlet D_p(alpha)          alpha_n^(1/p)
//   BMOA                          |f(0)| + sup_I mean_I |f - f_I|, bracketed

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "entire/coefficient.hpp"
#include "entire/errors.hpp"
#include "entire/numerics.hpp"
#include "entire/spec_text.hpp"

namespace entire {

// ---------------------------------------------------------------------------
// Weights
// ---------------------------------------------------------------------------

/// Radial weight rho(t) on (0,1) for weighted Bergman spaces: either
/// (1-t)^beta t^gamma, or a piecewise-linear table covering [0, 1].
class WeightSpec {
 public:
  static WeightSpec jacobi(double beta, double gamma) {
    if (!(beta > -1.0) || !(gamma > -1.0)) throw DomainError("weight jacobi(beta,gamma): need beta, gamma > -1");
    WeightSpec w;
    w.beta_ = beta;
    w.gamma_ = gamma;
    return w;
  }

  static WeightSpec tabulated(std::vector<double> t, std::vector<double> rho) {
    if (t.size() != rho.size() || t.size() < 2) throw DomainError("weight table: need >= 2 (t, rho) pairs");
    if (t.front() != 0.0 || t.back() != 1.0) throw DomainError("weight table: nodes must span [0, 1]");
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (i > 0 && !(t[i] > t[i - 1])) throw DomainError("weight table: nodes must increase");
      if (!(rho[i] >= 0.0) || !std::isfinite(rho[i])) throw DomainError("weight table: values must be finite, >= 0");
    }
    // Positive mass in every neighbourhood of t = 1.
    if (!(rho.back() > 0.0)) throw DomainError("weight table: rho(1) must be positive");
    WeightSpec w;
    w.table_t_ = std::move(t);
    w.table_rho_ = std::move(rho);
    return w;
  }

  bool is_parametric() const noexcept { return table_t_.empty(); }
  double beta() const noexcept { return beta_; }
  double gamma() const noexcept { return gamma_; }
  const std::vector<double>& table_t() const noexcept { return table_t_; }
  const std::vector<double>& table_rho() const noexcept { return table_rho_; }

  double operator()(double t) const {
    if (is_parametric()) return std::pow(1.0 - t, beta_) * std::pow(t, gamma_);
    auto it = std::upper_bound(table_t_.begin(), table_t_.end(), t);
    if (it == table_t_.begin()) return table_rho_.front();
    if (it == table_t_.end()) return table_rho_.back();
    const auto i = static_cast<std::size_t>(it - table_t_.begin());
    const double w = (t - table_t_[i - 1]) / (table_t_[i] - table_t_[i - 1]);
    return (1.0 - w) * table_rho_[i - 1] + w * table_rho_[i];
  }

  std::string to_string() const {
    if (is_parametric()) return "jacobi(" + text::format_real(beta_) + "," + text::format_real(gamma_) + ")";
    std::string s = "table(";
    for (std::size_t i = 0; i < table_t_.size(); ++i) {
      if (i) s += ';';
      s += text::format_real(table_t_[i]) + ":" + text::format_real(table_rho_[i]);
    }
    return s + ")";
  }

  friend bool operator==(const WeightSpec&, const WeightSpec&) = default;

 private:
  WeightSpec() = default;
  double beta_ = 0.0;
  double gamma_ = 0.0;
  std::vector<double> table_t_;
  std::vector<double> table_rho_;
};

/// Closed-form weight rule k -> alpha_k for generalized Dirichlet spaces.
/// geometric(a): a^k (a >= 1);  power(e): (k+1)^e.
class DirichletWeights {
 public:
  enum class Rule { geometric, power };

  static DirichletWeights geometric(double a) {
    // liminf alpha_k^(1/k) = a must be >= 1 and finite.
    if (!(a >= 1.0) || !std::isfinite(a)) throw DomainError("dirichlet weights geometric(a): need 1 <= a < inf");
    return DirichletWeights(Rule::geometric, a);
  }
  static DirichletWeights power(double e) {
    if (!std::isfinite(e)) throw DomainError("dirichlet weights power(e): e must be finite");
    return DirichletWeights(Rule::power, e);
  }

  Rule rule() const noexcept { return rule_; }
  double parameter() const noexcept { return param_; }

  LogReal operator()(Index k) const {
    if (k < 0) throw DomainError("dirichlet weight: negative index");
    const auto kd = static_cast<double>(k);
    switch (rule_) {
      case Rule::geometric: return LogReal::from_log(kd * std::log(param_));
      case Rule::power: return LogReal::from_log(param_ * std::log1p(kd));
    }
    return LogReal::one();
  }

  std::string to_string() const {
    return (rule_ == Rule::geometric ? "geometric(" : "power(") + text::format_real(param_) + ")";
  }

  friend bool operator==(const DirichletWeights&, const DirichletWeights&) = default;

 private:
  DirichletWeights(Rule r, double p) : rule_(r), param_(p) {}
  Rule rule_;
  double param_;
};

// ---------------------------------------------------------------------------
// SpaceSpec
// ---------------------------------------------------------------------------

namespace space {
struct DiskAlgebra {
  friend bool operator==(const DiskAlgebra&, const DiskAlgebra&) = default;
};
struct Hardy {
  double p = 2.0;
  friend bool operator==(const Hardy&, const Hardy&) = default;
};
struct Bergman {
  double p = 2.0;
  friend bool operator==(const Bergman&, const Bergman&) = default;
};
struct WeightedBergman {
  double p = 2.0;
  WeightSpec weight = WeightSpec::jacobi(0.0, 0.0);
  friend bool operator==(const WeightedBergman&, const WeightedBergman&) = default;
};
struct Ap {
  double p = 0.5;
  friend bool operator==(const Ap&, const Ap&) = default;
};
struct HardyLittlewood {
  double p = 1.0;
  double q = 2.0;
  double lambda = 1.0;
  friend bool operator==(const HardyLittlewood&, const HardyLittlewood&) = default;
};
struct MixedNorm {
  double p = 2.0;
  double q = 2.0;
  double alpha = 1.0;
  friend bool operator==(const MixedNorm&, const MixedNorm&) = default;
};
struct Bmoa {
  friend bool operator==(const Bmoa&, const Bmoa&) = default;
};
struct BlochType {
  double alpha = 1.0;
  friend bool operator==(const BlochType&, const BlochType&) = default;
};
struct Dynkin {
  double p = 2.0;
  double q = 2.0;
  double s = 0.5;
  int m = 1;
  friend bool operator==(const Dynkin&, const Dynkin&) = default;
};
struct Dirichlet {
  double p = 2.0;
  DirichletWeights weights = DirichletWeights::geometric(1.0);
  friend bool operator==(const Dirichlet&, const Dirichlet&) = default;
};
}  // namespace space

using SpaceVariant = std::variant<space::DiskAlgebra, space::Hardy, space::Bergman, space::WeightedBergman, space::Ap,
                                  space::HardyLittlewood, space::MixedNorm, space::Bmoa, space::BlochType,
                                  space::Dynkin, space::Dirichlet>;

/// One function space with validated parameters. Immutable.
class SpaceSpec {
 public:
  template <class Alternative>
    requires std::is_constructible_v<SpaceVariant, Alternative>
  SpaceSpec(Alternative alt) : v_(std::move(alt)) {  // NOLINT: implicit by intent
    validate();
  }

  static SpaceSpec disk_algebra() { return space::DiskAlgebra{}; }
  static SpaceSpec hardy(double p = 2.0) { return space::Hardy{p}; }
  static SpaceSpec bergman(double p = 2.0) { return space::Bergman{p}; }
  static SpaceSpec weighted_bergman(double p, WeightSpec w) { return space::WeightedBergman{p, std::move(w)}; }
  static SpaceSpec ap(double p = 0.5) { return space::Ap{p}; }
  static SpaceSpec hardy_littlewood(double p = 1.0, double q = 2.0, double lambda = 1.0) {
    return space::HardyLittlewood{p, q, lambda};
  }
  static SpaceSpec mixed_norm(double p = 2.0, double q = 2.0, double alpha = 1.0) {
    return space::MixedNorm{p, q, alpha};
  }
  static SpaceSpec bmoa() { return space::Bmoa{}; }
  static SpaceSpec bloch(double alpha = 1.0) { return space::BlochType{alpha}; }
  static SpaceSpec dynkin(double p = 2.0, double q = 2.0, double s = 0.5, int m = 1) {
    return space::Dynkin{p, q, s, m};
  }
  static SpaceSpec dirichlet(double p, DirichletWeights w) { return space::Dirichlet{p, w}; }

  const SpaceVariant& variant() const noexcept { return v_; }

  template <class T>
  const T* as() const noexcept {
    return std::get_if<T>(&v_);
  }

  std::string to_string() const;

  friend bool operator==(const SpaceSpec&, const SpaceSpec&) = default;

 private:
  void validate() const;
  SpaceVariant v_;
};

namespace detail {
template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

inline void require(bool ok, const char* parameter, const std::string& what) {
  if (!ok) throw DomainError(what, parameter);
}
}  // namespace detail

inline void SpaceSpec::validate() const {
  using detail::require;
  std::visit(detail::overloaded{
                 [](const space::DiskAlgebra&) {},
                 [](const space::Hardy& s) { require(s.p >= 1.0, "p", "hardy: p must be >= 1"); },
                 [](const space::Bergman& s) {
                   require(s.p >= 1.0 && std::isfinite(s.p), "p", "bergman: p must be finite and >= 1");
                 },
                 [](const space::WeightedBergman& s) {
                   require(s.p >= 1.0 && std::isfinite(s.p), "p", "wbergman: p must be finite and >= 1");
                 },
                 [](const space::Ap& s) { require(s.p > 0.0 && s.p < 1.0, "p", "ap: p must lie in (0, 1)"); },
                 [](const space::HardyLittlewood& s) {
                   require(s.p > 0.0 && s.p < s.q && std::isfinite(s.p), "p", "hl: need 0 < p < q <= inf");
                   require(s.lambda > 0.0, "lambda", "hl: lambda must be positive");
                 },
                 [](const space::MixedNorm& s) {
                   require(s.p >= 1.0, "p", "mixed: p must be >= 1");
                   require(s.q >= 1.0, "q", "mixed: q must be >= 1");
                   require(s.alpha > 0.0 && std::isfinite(s.alpha), "alpha", "mixed: alpha must be positive");
                 },
                 [](const space::Bmoa&) {},
                 [](const space::BlochType& s) {
                   require(s.alpha > 0.0 && std::isfinite(s.alpha), "alpha", "bloch: alpha must be positive");
                 },
                 [](const space::Dynkin& s) {
                   require(s.p >= 1.0, "p", "dynkin: p must lie in [1, inf]");
                   require(s.q >= 1.0, "q", "dynkin: q must lie in [1, inf]");
                   require(s.s > 0.0 && std::isfinite(s.s), "s", "dynkin: s must be positive");
                   require(s.m >= 1 && s.m > s.s, "m", "dynkin: m must be a positive integer > s");
                 },
                 [](const space::Dirichlet& s) { require(s.p >= 1.0 && std::isfinite(s.p), "p", "dirichlet: p >= 1"); },
             },
             v_);
}

inline std::string SpaceSpec::to_string() const {
  using text::format_real;
  return std::visit(
      detail::overloaded{
          [](const space::DiskAlgebra&) -> std::string { return "disk"; },
          [](const space::Hardy& s) { return "hardy:p=" + format_real(s.p); },
          [](const space::Bergman& s) { return "bergman:p=" + format_real(s.p); },
          [](const space::WeightedBergman& s) {
            return "wbergman:p=" + format_real(s.p) + ",weight=" + s.weight.to_string();
          },
          [](const space::Ap& s) { return "ap:p=" + format_real(s.p); },
          [](const space::HardyLittlewood& s) {
            return "hl:p=" + format_real(s.p) + ",q=" + format_real(s.q) + ",lambda=" + format_real(s.lambda);
          },
          [](const space::MixedNorm& s) {
            return "mixed:p=" + format_real(s.p) + ",q=" + format_real(s.q) + ",alpha=" + format_real(s.alpha);
          },
          [](const space::Bmoa&) -> std::string { return "bmoa"; },
          [](const space::BlochType& s) { return "bloch:alpha=" + format_real(s.alpha); },
          [](const space::Dynkin& s) {
            return "dynkin:p=" + format_real(s.p) + ",q=" + format_real(s.q) + ",s=" + format_real(s.s) +
                   ",m=" + std::to_string(s.m);
          },
          [](const space::Dirichlet& s) {
            return "dirichlet:p=" + format_real(s.p) + ",weights=" + s.weights.to_string();
          },
      },
      v_);
}

namespace detail {

inline WeightSpec parse_weight(std::string_view s) {
  auto call = text::parse_call(s);
  if (!call) throw ParseError("weight", "weight: expected jacobi(beta,gamma) or table(t:rho;...)");
  if (call->name == "jacobi") {
    if (call->args.size() != 2) throw ParseError("weight", "weight jacobi: expected two arguments");
    return WeightSpec::jacobi(text::parse_real(call->args[0], "weight"), text::parse_real(call->args[1], "weight"));
  }
  if (call->name == "table") {
    if (call->args.size() != 1) throw ParseError("weight", "weight table: entries are ';'-separated");
    std::vector<double> t, rho;
    for (auto entry : text::split_top_level(call->args[0], ';')) {
      const auto colon = entry.find(':');
      if (colon == std::string_view::npos) throw ParseError("weight", "weight table: entry must be t:rho");
      t.push_back(text::parse_real(entry.substr(0, colon), "weight"));
      rho.push_back(text::parse_real(entry.substr(colon + 1), "weight"));
    }
    return WeightSpec::tabulated(std::move(t), std::move(rho));
  }
  throw ParseError("weight", "weight: unknown rule '" + call->name + "'");
}

inline DirichletWeights parse_dirichlet_weights(std::string_view s) {
  auto call = text::parse_call(s);
  if (!call || call->args.size() != 1) throw ParseError("weights", "weights: expected geometric(a) or power(e)");
  const double v = text::parse_real(call->args[0], "weights");
  if (call->name == "geometric") return DirichletWeights::geometric(v);
  if (call->name == "power") return DirichletWeights::power(v);
  throw ParseError("weights", "weights: unknown rule '" + call->name + "'");
}

}  // namespace detail

/// Parses the canonical textual form, e.g. "bergman:p=2",
/// "dirichlet:p=2,weights=power(-1)", "hl:p=1,q=2,lambda=inf".
/// Omitted parameters take the catalog defaults.
inline SpaceSpec parse_space(std::string_view textual) {
  const auto spec = text::split_spec(textual);
  auto real = [](const auto& kv, const char* key, double fallback) {
    auto it = kv.find(key);
    return it == kv.end() ? fallback : text::parse_real(it->second, key);
  };
  // Domain errors from the constructors are re-raised as parse errors naming the space.
  try {
    if (spec.name == "disk") {
      text::key_values(spec, {});
      return SpaceSpec::disk_algebra();
    }
    if (spec.name == "hardy") {
      auto kv = text::key_values(spec, {"p"});
      return SpaceSpec::hardy(real(kv, "p", 2.0));
    }
    if (spec.name == "bergman") {
      auto kv = text::key_values(spec, {"p"});
      return SpaceSpec::bergman(real(kv, "p", 2.0));
    }
    if (spec.name == "wbergman") {
      auto kv = text::key_values(spec, {"p", "weight"});
      auto it = kv.find("weight");
      WeightSpec w = it == kv.end() ? WeightSpec::jacobi(0.0, 0.0) : detail::parse_weight(it->second);
      return SpaceSpec::weighted_bergman(real(kv, "p", 2.0), std::move(w));
    }
    if (spec.name == "ap") {
      auto kv = text::key_values(spec, {"p"});
      return SpaceSpec::ap(real(kv, "p", 0.5));
    }
    if (spec.name == "hl") {
      auto kv = text::key_values(spec, {"p", "q", "lambda"});
      return SpaceSpec::hardy_littlewood(real(kv, "p", 1.0), real(kv, "q", 2.0), real(kv, "lambda", 1.0));
    }
    if (spec.name == "mixed") {
      auto kv = text::key_values(spec, {"p", "q", "alpha"});
      return SpaceSpec::mixed_norm(real(kv, "p", 2.0), real(kv, "q", 2.0), real(kv, "alpha", 1.0));
    }
    if (spec.name == "bmoa") {
      text::key_values(spec, {});
      return SpaceSpec::bmoa();
    }
    if (spec.name == "bloch") {
      auto kv = text::key_values(spec, {"alpha"});
      return SpaceSpec::bloch(real(kv, "alpha", 1.0));
    }
    if (spec.name == "dynkin") {
      auto kv = text::key_values(spec, {"p", "q", "s", "m"});
      auto it = kv.find("m");
      const long long m = it == kv.end() ? 1 : text::parse_integer(it->second, "m");
      if (m < 1 || m > 64) throw ParseError("m", "dynkin: parameter 'm' must be an integer in [1, 64]");
      return SpaceSpec::dynkin(real(kv, "p", 2.0), real(kv, "q", 2.0), real(kv, "s", 0.5), static_cast<int>(m));
    }
    if (spec.name == "dirichlet") {
      auto kv = text::key_values(spec, {"p", "weights"});
      auto it = kv.find("weights");
      auto w = it == kv.end() ? DirichletWeights::geometric(1.0) : detail::parse_dirichlet_weights(it->second);
      return SpaceSpec::dirichlet(real(kv, "p", 2.0), w);
    }
  } catch (const DomainError& e) {
    throw ParseError(e.parameter().empty() ? spec.name : e.parameter(),
                     std::string("space '") + std::string(textual) + "': " + e.what());
  }
  throw ParseError("name", "unknown space '" + spec.name + "'");
}

// ---------------------------------------------------------------------------
// Monomial norms
// ---------------------------------------------------------------------------

enum class NormKind { exact, bracketed };

/// log ||z^n||. For bracketed values `value` is the log of the bracket's
/// linear midpoint and [lower, upper] contains the true norm.
struct NormValue {
  LogReal value;
  NormKind kind = NormKind::exact;
  LogReal lower;
  LogReal upper;

  static NormValue exact(LogReal v) { return {v, NormKind::exact, v, v}; }
  static NormValue bracket(LogReal lo, LogReal hi) {
    const LogReal mid = (lo + hi) * LogReal::from_log(-std::numbers::ln2);
    return {mid, NormKind::bracketed, lo, hi};
  }
};

namespace detail {

/// sup_{0<r<1} r^n (1-r)^beta, in log scale.
inline LogReal sup_power_profile(Index n, double beta) {
  if (n == 0) return LogReal::one();
  const auto nd = static_cast<double>(n);
  auto log_g = [&](double r) { return nd * std::log(r) + beta * std::log1p(-r); };
  const auto best = maximize_unimodal(log_g, 0.0, 1.0, 1e-14);
  return LogReal::from_log(best.value);
}

/// Mean oscillation of e^{iu} over an arc of half-length s (in the variable
/// u = n t):  (1/s) int_0^s |e^{iu} - sin(s)/s| du.
inline double bmoa_mean_oscillation(double s) {
  const double c = std::sin(s) / s;
  auto g = [&](double x) { return std::hypot(std::cos(s * x) - c, std::sin(s * x)); };
  return integrate_01(g, {}, {1e-11, Index{1} << 16}).linear();
}

/// Bracket for sup over s in (0, s_max] of the mean oscillation.
/// Lower end: best value found by scan + golden refinement.
/// Upper end: mean-square bound A(s) <= sqrt(1 - c(s)^2), maximized over the
/// scan cells (c^2 has its minima only at zeros s = k pi).
inline std::pair<double, double> bmoa_sup_bracket(double s_max) {
  // A(s) ~ s/2 near 0, far below the maximum; the scan starts away from it.
  const double lo = 1e-3;
  const auto best = maximize_unimodal([](double s) { return bmoa_mean_oscillation(s); }, lo, s_max, 1e-13);

  constexpr int kCells = 256;
  double upper = 0.0;
  for (int i = 0; i < kCells; ++i) {
    const double a = lo + (s_max - lo) * i / kCells;
    const double b = lo + (s_max - lo) * (i + 1) / kCells;
    const double ca = std::sin(a) / a;
    const double cb = std::sin(b) / b;
    const bool crosses_zero = std::floor(a / std::numbers::pi) != std::floor(b / std::numbers::pi) ||
                              std::fmod(b, std::numbers::pi) == 0.0;
    const double min_c2 = crosses_zero ? 0.0 : std::min(ca * ca, cb * cb);
    upper = std::max(upper, std::sqrt(1.0 - min_c2));
  }
  const double lower = std::min(best.value, upper);
  return {lower, upper};
}

inline NormValue bmoa_monomial_norm(Index n) {
  // ||f|| = |f(0)| + sup_I mean_I |f - f_I|; the constant 1 has zero oscillation.
  if (n == 0) return NormValue::exact(LogReal::one());
  // The oscillation depends on n only through the arc range s in (0, n pi].
  // For n >= 2 the scanned range (0, 2 pi] already contains the certified
  // maximiser s = pi and the mean-square bound caps every longer arc at 1.
  auto compute = [](double s_max) {
    auto [lo, hi] = bmoa_sup_bracket(s_max);
    if (hi - lo > 1e-6 * hi) throw AccuracyError("bmoa: bracket did not reach 1e-6 relative width", std::log(lo),
                                                 (hi - lo) / hi);
    return NormValue::bracket(LogReal::from_linear(lo), LogReal::from_linear(hi));
  };
  static const NormValue first = compute(std::numbers::pi);
  static const NormValue rest = compute(2.0 * std::numbers::pi);
  return n == 1 ? first : rest;
}

inline LogReal bloch_monomial_norm(Index n, double alpha) {
  if (n == 0) return LogReal::one();
  if (n == 1) return LogReal::one();  // sup (1 - r^2)^alpha at r = 0
  // Stationary point of n r^(n-1) (1-r^2)^alpha: r^2 = (n-1)/(n-1+2 alpha).
  const double m = static_cast<double>(n - 1);
  const double denom = m + 2.0 * alpha;
  return LogReal::from_log(std::log(static_cast<double>(n)) + 0.5 * m * std::log(m / denom) +
                           alpha * std::log(2.0 * alpha / denom));
}

inline LogReal dynkin_monomial_norm(Index n, const space::Dynkin& d) {
  if (n == 0) return LogReal::one();  // omega_m(1, t) = 0
  const auto nd = static_cast<double>(n);
  const double m = d.m;
  const double s = d.s;
  // omega_m(z^n, t) = (2 sin(min(n t, pi) / 2))^m: the m-th difference of
  // e^{in.} has modulus (2 |sin(nh/2)|)^m, maximized over |h| <= t.
  const double cutoff = std::min(std::numbers::pi / nd, 1.0);
  if (std::isinf(d.q)) {
    auto log_ratio = [&](double t) { return m * std::log(2.0 * std::sin(nd * t / 2.0)) - s * std::log(t); };
    const auto best = maximize_unimodal(log_ratio, cutoff * 1e-12, cutoff, 1e-14);
    return LogReal::from_log(best.value) + LogReal::one();
  }
  const double q = d.q;
  // int_0^cutoff: with u = n t and x = u / U (U = n * cutoff),
  //   n^(sq) U^((m-s)q) int_0^1 (2 sin(Ux/2) / (Ux))^(mq) x^((m-s)q - 1) dx.
  const double big_u = nd * cutoff;
  auto sinc_power = [&](double x) {
    const double y = big_u * x;
    const double ratio = y < 1e-8 ? 1.0 - y * y / 24.0 : 2.0 * std::sin(y / 2.0) / y;
    return std::pow(ratio, m * q);
  };
  const LogReal near = integrate_01(sinc_power, {(m - s) * q - 1.0, 0.0}) *
                       LogReal::from_log(s * q * std::log(nd) + (m - s) * q * std::log(big_u));
  LogReal far = LogReal::zero();
  if (cutoff < 1.0) {
    // int_cutoff^1 2^(mq) t^(-sq-1) dt
    const double sq = s * q;
    far = LogReal::from_log(m * q * std::numbers::ln2 + std::log(std::expm1(-sq * std::log(cutoff)) / sq));
  }
  return (near + far).pow(1.0 / q) + LogReal::one();
}

inline LogReal weighted_bergman_monomial_norm(Index n, const space::WeightedBergman& wb) {
  const double np1 = static_cast<double>(n) * wb.p + 1.0;
  LogReal integral;
  if (wb.weight.is_parametric()) {
    integral = integrate_01([](double) { return 1.0; }, {np1 + wb.weight.gamma(), wb.weight.beta()});
  } else {
    integral = integrate_01([&](double t) { return wb.weight(t); }, {np1, 0.0});
  }
  return (LogReal::from_log(std::numbers::ln2) * integral).pow(1.0 / wb.p);
}

inline double hl_exponent(const space::HardyLittlewood& h) {
  return std::isinf(h.q) ? h.p : h.p * h.q / (h.q - h.p);
}

}  // namespace detail

inline NormValue monomial_norm(const SpaceSpec& space, Index n) {
  if (n < 0) throw DomainError("monomial_norm: n must be >= 0");
  const auto nd = static_cast<double>(n);
  return std::visit(
      detail::overloaded{
          [](const space::DiskAlgebra&) { return NormValue::exact(LogReal::one()); },
          [](const space::Hardy&) { return NormValue::exact(LogReal::one()); },
          [&](const space::Bergman& s) {
            return NormValue::exact(LogReal::from_log(std::log(2.0 / (nd * s.p + 2.0)) / s.p));
          },
          [&](const space::WeightedBergman& s) {
            return NormValue::exact(detail::weighted_bergman_monomial_norm(n, s));
          },
          [&](const space::Ap& s) { return NormValue::exact(log_beta(nd + 1.0, 1.0 / s.p - 1.0)); },
          [&](const space::HardyLittlewood& s) {
            const double beta = detail::hl_exponent(s);
            if (std::isinf(s.lambda)) return NormValue::exact(detail::sup_power_profile(n, beta));
            return NormValue::exact(log_beta(s.lambda * nd + 1.0, s.lambda * beta + 1.0).pow(1.0 / s.lambda));
          },
          [&](const space::MixedNorm& s) {
            if (std::isinf(s.q)) return NormValue::exact(detail::sup_power_profile(n, s.alpha));
            return NormValue::exact(log_beta(nd * s.q + 1.0, s.q * s.alpha).pow(1.0 / s.q));
          },
          [&](const space::Bmoa&) { return detail::bmoa_monomial_norm(n); },
          [&](const space::BlochType& s) { return NormValue::exact(detail::bloch_monomial_norm(n, s.alpha)); },
          [&](const space::Dynkin& s) { return NormValue::exact(detail::dynkin_monomial_norm(n, s)); },
          [&](const space::Dirichlet& s) { return NormValue::exact(s.weights(n).pow(1.0 / s.p)); },
      },
      space.variant());
}

/// The simplified monomial-norm expressions as printed in the source
/// literature, for side-by-side comparison with `monomial_norm`. Only spaces
/// whose printed expression differs from the definition have an entry.
inline std::optional<LogReal> displayed_monomial_norm(const SpaceSpec& space, Index n) {
  if (n < 0) throw DomainError("displayed_monomial_norm: n must be >= 0");
  const auto nd = static_cast<double>(n);
  if (const auto* s = space.as<space::Bergman>()) {
    return LogReal::from_log(-std::log(nd * s->p + 2.0) / s->p);
  }
  if (const auto* s = space.as<space::Ap>()) {
    return (LogReal::from_log(std::log(2.0 * std::numbers::pi)) * log_beta(1.0 / s->p - 1.0, nd * s->p + 1.0))
        .pow(1.0 / s->p);
  }
  if (const auto* s = space.as<space::BlochType>()) {
    if (n == 0) return std::nullopt;
    const double a = s->alpha;
    return LogReal::from_log(0.5 * nd * std::log(nd / (nd + a)) + a * std::log(2.0 * a / (nd + 2.0 * a)));
  }
  if (const auto* s = space.as<space::HardyLittlewood>()) {
    if (std::isinf(s->lambda)) return std::nullopt;
    return log_beta(s->lambda * nd + 1.0, s->lambda * detail::hl_exponent(*s) + 1.0);
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Coefficient-separable norms
// ---------------------------------------------------------------------------

/// ||f|| = (sum_k |c_k|^p alpha_k)^(1/p).
struct SeparableNorm {
  double p = 2.0;
  std::function<LogReal(Index)> weight;  // log alpha_k
};

/// Hardy(2), Bergman(2), WeightedBergman(2, .) and Dirichlet(p, .) are
/// coefficient-separable; nullopt otherwise.
inline std::optional<SeparableNorm> separable_form(const SpaceSpec& space) {
  if (const auto* s = space.as<space::Dirichlet>()) {
    auto w = s->weights;
    return SeparableNorm{s->p, [w](Index k) { return w(k); }};
  }
  if (const auto* s = space.as<space::Hardy>(); s && s->p == 2.0) {
    return SeparableNorm{2.0, [](Index) { return LogReal::one(); }};
  }
  if (const auto* s = space.as<space::Bergman>(); s && s->p == 2.0) {
    return SeparableNorm{2.0, [](Index k) { return LogReal::from_log(-std::log1p(static_cast<double>(k))); }};
  }
  if (const auto* s = space.as<space::WeightedBergman>(); s && s->p == 2.0) {
    auto copy = *s;
    return SeparableNorm{2.0, [copy](Index k) { return detail::weighted_bergman_monomial_norm(k, copy).pow(2.0); }};
  }
  return std::nullopt;
}

inline bool is_coefficient_separable(const SpaceSpec& space) { return separable_form(space).has_value(); }

inline SeparableNorm require_separable(const SpaceSpec& space, const char* operation) {
  auto form = separable_form(space);
  if (!form) {
    throw UnsupportedOperation(std::string(operation) + ": space '" + space.to_string() +
                               "' is not coefficient-separable");
  }
  return std::move(*form);
}

/// log ||f|| for f = sum_k c_k z^k given by a finite coefficient prefix.
inline LogReal coefficient_norm(const SpaceSpec& space, std::span<const Coefficient> coeffs) {
  const auto form = require_separable(space, "coefficient_norm");
  LogSumAccumulator acc;
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    if (coeffs[k].magnitude.is_zero()) continue;
    acc.add(coeffs[k].magnitude.pow(form.p) * form.weight(static_cast<Index>(k)));
  }
  return acc.sum().pow(1.0 / form.p);
}

/// Taylor coefficients of (f * g)(z) = (1/2pi) int f(z e^{it}) g(t) dt:
/// output k is c_k b_{-k}, with b_j the Fourier coefficients of g supplied by
/// `fourier(j)`.
template <class Fourier>
std::vector<std::complex<double>> convolution_coefficients(std::span<const std::complex<double>> f,
                                                           Fourier&& fourier) {
  std::vector<std::complex<double>> out(f.size());
  for (std::size_t k = 0; k < f.size(); ++k) {
    out[k] = f[k] * static_cast<std::complex<double>>(fourier(-static_cast<Index>(k)));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Norm profiles
// ---------------------------------------------------------------------------

struct NormEntry {
  Index n = 0;
  NormValue norm;
};

struct RootStats {
  std::vector<std::pair<Index, double>> roots;  // (n, ||z^n||^(1/n)), n >= 1
  double mu_lower = 0.0;                        // min root over the final half (liminf probe)
  double mu_upper = 0.0;                        // max root over the final half (limsup probe)
  LogReal infimum;                              // min_n ||z^n||
  Index infimum_at = 0;
};

struct NormProfile {
  SpaceSpec space;
  std::vector<NormEntry> entries;
  RootStats root_stats;
};

inline RootStats root_statistics(std::span<const NormEntry> entries) {
  RootStats st;
  if (entries.empty()) return st;
  st.infimum = entries.front().norm.value;
  st.infimum_at = entries.front().n;
  for (const auto& e : entries) {
    if (e.norm.value < st.infimum) {
      st.infimum = e.norm.value;
      st.infimum_at = e.n;
    }
    if (e.n >= 1) st.roots.emplace_back(e.n, std::exp(e.norm.value.log() / static_cast<double>(e.n)));
  }
  if (!st.roots.empty()) {
    const Index last = st.roots.back().first;
    const Index from = (last + 1) / 2;
    st.mu_lower = kInf;
    st.mu_upper = -kInf;
    for (auto [n, r] : st.roots) {
      if (n < from) continue;
      st.mu_lower = std::min(st.mu_lower, r);
      st.mu_upper = std::max(st.mu_upper, r);
    }
  }
  return st;
}

inline NormProfile norm_profile(const SpaceSpec& space, Index n_max) {
  if (n_max < 1) throw DomainError("norm_profile: n_max must be >= 1");
  NormProfile prof{space, {}, {}};
  prof.entries.reserve(static_cast<std::size_t>(n_max) + 1);
  for (Index n = 0; n <= n_max; ++n) prof.entries.push_back({n, monomial_norm(space, n)});
  prof.root_stats = root_statistics(prof.entries);
  return prof;
}

/// Memoized monomial norms for one space, filled on demand: contiguously for
/// small n, sparsely for far jumps (lacunary exponents). Not thread-safe;
/// intended as a per-computation local.
class MonomialNormTable {
 public:
  explicit MonomialNormTable(SpaceSpec space) : space_(std::move(space)) {}

  NormValue operator()(Index n) {
    if (n < 0) throw DomainError("monomial_norm: n must be >= 0");
    if (n < static_cast<Index>(dense_.size())) return dense_[static_cast<std::size_t>(n)];
    if (n <= static_cast<Index>(dense_.size()) + kDenseReach) {
      while (static_cast<Index>(dense_.size()) <= n) {
        dense_.push_back(monomial_norm(space_, static_cast<Index>(dense_.size())));
      }
      return dense_.back();
    }
    auto it = sparse_.find(n);
    if (it == sparse_.end()) it = sparse_.emplace(n, monomial_norm(space_, n)).first;
    return it->second;
  }

  const SpaceSpec& space() const noexcept { return space_; }

 private:
  static constexpr Index kDenseReach = 4096;
  SpaceSpec space_;
  std::vector<NormValue> dense_;
  std::map<Index, NormValue> sparse_;
};

}  // namespace entire
