#pragma once

// Log-domain scalar utilities: LogReal, stable sums, log-gamma/log-beta,
// weighted quadrature on (0,1), unimodal maximization and a small
// least-squares solver used by the limit extrapolations.
//
// Every magnitude in this library (monomial norms, Taylor coefficients,
// approximation errors) is carried as a logarithm. Linear values are only
// produced at reporting boundaries.

#include <algorithm>
#include <array>
#include <cmath>
#include <compare>
#include <cstdint>
#include <limits>
#include <numbers>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "entire/errors.hpp"

namespace entire {

using Index = std::int64_t;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Logarithm of a nonnegative quantity. -inf encodes exact zero.
/// Construction from NaN throws; arithmetic never produces NaN silently.
class LogReal {
 public:
  constexpr LogReal() = default;

  static LogReal from_log(double v) {
    if (std::isnan(v)) throw DomainError("LogReal: NaN logarithm");
    LogReal r;
    r.value_ = v;
    return r;
  }

  static LogReal from_linear(double x) {
    if (std::isnan(x) || x < 0.0) throw DomainError("LogReal: negative or NaN linear value");
    return from_log(std::log(x));
  }

  static constexpr LogReal zero() { return LogReal{}; }
  static LogReal one() { return from_log(0.0); }

  constexpr double log() const noexcept { return value_; }
  double linear() const noexcept { return std::exp(value_); }
  constexpr bool is_zero() const noexcept { return value_ == -kInf; }
  bool is_finite() const noexcept { return std::isfinite(value_); }

  /// x^k. 0^0 = 1; 0^k = 0 for k > 0; 0^k = +inf for k < 0.
  LogReal pow(double k) const {
    if (std::isnan(k)) throw DomainError("LogReal::pow: NaN exponent");
    if (k == 0.0) return one();
    if (is_zero()) return k > 0 ? zero() : from_log(kInf);
    return from_log(k * value_);
  }

  friend LogReal operator*(LogReal a, LogReal b) {
    if (a.is_zero() || b.is_zero()) {
      if (a.value_ == kInf || b.value_ == kInf) throw DomainError("LogReal: 0 * inf");
      return zero();
    }
    return from_log(a.value_ + b.value_);
  }

  friend LogReal operator/(LogReal a, LogReal b) {
    if (b.is_zero()) throw DomainError("LogReal: division by zero");
    if (a.value_ == kInf && b.value_ == kInf) throw DomainError("LogReal: inf / inf");
    if (a.is_zero()) return zero();
    return from_log(a.value_ - b.value_);
  }

  friend LogReal operator+(LogReal a, LogReal b) {
    if (a.value_ < b.value_) std::swap(a, b);
    if (b.is_zero()) return a;
    if (a.value_ == kInf) return a;
    return from_log(a.value_ + std::log1p(std::exp(b.value_ - a.value_)));
  }

  LogReal& operator*=(LogReal b) { return *this = *this * b; }
  LogReal& operator+=(LogReal b) { return *this = *this + b; }

  friend constexpr auto operator<=>(LogReal a, LogReal b) noexcept { return a.value_ <=> b.value_; }
  friend constexpr bool operator==(LogReal a, LogReal b) noexcept { return a.value_ == b.value_; }

 private:
  double value_ = -kInf;
};

/// log(sum exp(t_i)). Empty input gives -inf.
inline LogReal log_sum_exp(std::span<const LogReal> terms) {
  double peak = -kInf;
  for (LogReal t : terms) peak = std::max(peak, t.log());
  if (peak == -kInf) return LogReal::zero();
  if (peak == kInf) return LogReal::from_log(kInf);
  double acc = 0.0;
  for (LogReal t : terms) acc += std::exp(t.log() - peak);
  return LogReal::from_log(peak + std::log(acc));
}

inline LogReal log_sum_exp(std::initializer_list<LogReal> terms) {
  return log_sum_exp(std::span<const LogReal>(terms.begin(), terms.size()));
}

/// Streaming log-sum-exp with rescaling, for series whose terms arrive one at a time.
class LogSumAccumulator {
 public:
  void add(LogReal t) {
    const double v = t.log();
    if (v == -kInf) return;
    if (v == kInf) {
      peak_ = kInf;
      scaled_ = 1.0;
      return;
    }
    if (v <= peak_) {
      scaled_ += std::exp(v - peak_);
    } else {
      scaled_ = scaled_ * std::exp(peak_ - v) + 1.0;
      peak_ = v;
    }
  }

  LogReal sum() const {
    if (peak_ == -kInf) return LogReal::zero();
    if (peak_ == kInf) return LogReal::from_log(kInf);
    return LogReal::from_log(peak_ + std::log(scaled_));
  }

 private:
  double peak_ = -kInf;
  double scaled_ = 0.0;
};

// ---------------------------------------------------------------------------
// Gamma and beta
// ---------------------------------------------------------------------------

namespace detail {

/// lgamma(x) - [(x - 1/2) log x - x + log sqrt(2 pi)], x >= 10.
inline double stirling_correction(double x) {
  const double r = 1.0 / x;
  const double r2 = r * r;
  return r *
         (1.0 / 12 +
          r2 * (-1.0 / 360 +
                r2 * (1.0 / 1260 +
                      r2 * (-1.0 / 1680 + r2 * (1.0 / 1188 + r2 * (-691.0 / 360360 + r2 * (1.0 / 156)))))));
}

inline constexpr double kLogSqrt2Pi = 0.918938533204672741780329736406;

}  // namespace detail

inline double log_gamma(double x) {
  if (!(x > 0.0)) throw DomainError("log_gamma: argument must be positive");
  return std::lgamma(x);
}

/// log B(a, b) with the large-argument parts computed from Stirling corrections
/// so that log Gamma(a) + log Gamma(b) - log Gamma(a+b) does not cancel.
inline LogReal log_beta(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b)) {
    throw DomainError("log_beta: arguments must be positive and finite");
  }
  const double p = std::min(a, b);
  const double q = std::max(a, b);
  const double s = p + q;
  using detail::stirling_correction;
  if (p >= 10.0) {
    const double corr = stirling_correction(p) + stirling_correction(q) - stirling_correction(s);
    return LogReal::from_log(-0.5 * std::log(q) + detail::kLogSqrt2Pi + corr +
                             (p - 0.5) * std::log(p / s) + q * std::log1p(-p / s));
  }
  if (q >= 10.0) {
    const double corr = stirling_correction(q) - stirling_correction(s);
    return LogReal::from_log(std::lgamma(p) + corr + p - p * std::log(s) + (q - 0.5) * std::log1p(-p / s));
  }
  return LogReal::from_log(std::lgamma(p) + std::lgamma(q) - std::lgamma(s));
}

// ---------------------------------------------------------------------------
// Quadrature on (0, 1)
// ---------------------------------------------------------------------------

/// Power-weight exponents r^at_zero (1-r)^at_one multiplying the integrand.
struct EndpointWeights {
  double at_zero = 0.0;
  double at_one = 0.0;
};

struct QuadratureOptions {
  double tolerance = 1e-10;
  Index max_nodes = Index{1} << 16;
};

namespace detail {

// 10-point Gauss-Legendre on [-1, 1], positive half.
inline constexpr std::array<double, 5> kGaussNodes = {
    0.1488743389816312108848260, 0.4333953941292471907992659, 0.6794095682990244062343274,
    0.8650633666889845107320967, 0.9739065285171717200779640};
inline constexpr std::array<double, 5> kGaussWeights = {
    0.2955242247147528701738930, 0.2692667193099963550912269, 0.2190863625159820439955349,
    0.1494513491505805931457763, 0.0666713443086881375935688};

template <class H>
double gauss10(const H& h, double a, double b) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double acc = 0.0;
  for (std::size_t i = 0; i < kGaussNodes.size(); ++i) {
    const double dx = half * kGaussNodes[i];
    acc += kGaussWeights[i] * (h(mid - dx) + h(mid + dx));
  }
  return acc * half;
}

// Panels live in a per-side local coordinate u in [0, 1/2]: side 0 has r = u,
// side 1 has r = 1 - u (so 1 - r is exact near the right endpoint). The panel
// touching the endpoint may be integrated in v = u^(e+1) to remove a u^e
// singularity (e < 0).
struct Panel {
  int side = 0;
  bool substituted = false;
  double a = 0.0;
  double b = 0.0;
  double value = 0.0;
  double error = 0.0;
};

inline constexpr int kGradedPanels = 24;

}  // namespace detail

/// log of the integral over (0,1) of r^gamma (1-r)^beta f(r), gamma, beta > -1.
/// Global adaptive composite Gauss-Legendre over panels graded toward both
/// endpoints; declared singular weights are absorbed by substitution in the
/// end panels. Stops when the summed error estimate is below
/// tolerance * |integral|; throws AccuracyError past max_nodes evaluations.
template <class F>
LogReal integrate_01(F&& f, EndpointWeights weights = {}, QuadratureOptions options = {}) {
  const double gamma = weights.at_zero;
  const double beta = weights.at_one;
  if (!(gamma > -1.0) || !(beta > -1.0)) throw DomainError("integrate_01: endpoint exponents must exceed -1");
  if (!(options.tolerance > 0.0)) throw DomainError("integrate_01: tolerance must be positive");

  // Integrand in local coordinates, with the endpoint power of this side
  // optionally stripped (when the panel is substituted).
  auto integrand = [&](int side, double u, bool strip) {
    if (u <= 0.0) return 0.0;
    const double r = side == 0 ? u : 1.0 - u;
    const double one_minus_r = side == 0 ? 1.0 - u : u;
    const double e0 = (side == 0 && strip) ? 0.0 : gamma;
    const double e1 = (side == 1 && strip) ? 0.0 : beta;
    double log_w = 0.0;
    if (e0 != 0.0) log_w += e0 * std::log(r);
    if (e1 != 0.0) log_w += e1 * std::log(one_minus_r);
    const double fv = f(r);
    if (fv == 0.0) return 0.0;
    return fv * std::exp(log_w);
  };

  Index nodes_used = 0;
  auto evaluate = [&](detail::Panel& p) {
    auto h = [&](double x) {
      if (!p.substituted) return integrand(p.side, x, false);
      const double e = p.side == 0 ? gamma : beta;
      const double u = std::pow(x, 1.0 / (e + 1.0));
      return integrand(p.side, u, true) / (e + 1.0);
    };
    const double whole = detail::gauss10(h, p.a, p.b);
    const double mid = 0.5 * (p.a + p.b);
    const double halves = detail::gauss10(h, p.a, mid) + detail::gauss10(h, mid, p.b);
    nodes_used += 30;
    p.value = halves;
    p.error = std::abs(whole - halves);
  };

  std::vector<detail::Panel> panels;
  for (int side = 0; side < 2; ++side) {
    const double e = side == 0 ? gamma : beta;
    double edge = 0.5;
    for (int j = 0; j < detail::kGradedPanels; ++j) {
      const double inner = edge * 0.25;
      panels.push_back({side, false, inner, edge});
      edge = inner;
    }
    if (e < 0.0) {
      panels.push_back({side, true, 0.0, std::pow(edge, e + 1.0)});
    } else {
      panels.push_back({side, false, 0.0, edge});
    }
  }
  for (auto& p : panels) evaluate(p);

  auto totals = [&] {
    double value = 0.0;
    double error = 0.0;
    for (const auto& p : panels) {
      value += p.value;
      error += p.error;
    }
    return std::pair{value, error};
  };

  for (;;) {
    const auto [value, error] = totals();
    if (!std::isfinite(value)) throw DomainError("integrate_01: integrand not finite");
    if (error <= options.tolerance * std::abs(value) || error == 0.0) {
      if (value < 0.0) throw DomainError("integrate_01: integral is negative; no logarithm");
      return value == 0.0 ? LogReal::zero() : LogReal::from_log(std::log(value));
    }
    if (nodes_used + 60 > options.max_nodes) {
      const double best = value > 0.0 ? std::log(value) : -kInf;
      throw AccuracyError("integrate_01: node budget exhausted", best,
                          value != 0.0 ? error / std::abs(value) : kInf);
    }
    auto worst = std::max_element(panels.begin(), panels.end(),
                                  [](const auto& x, const auto& y) { return x.error < y.error; });
    detail::Panel left = *worst;
    detail::Panel right = *worst;
    const double mid = 0.5 * (worst->a + worst->b);
    left.b = mid;
    right.a = mid;
    evaluate(left);
    evaluate(right);
    *worst = left;
    panels.push_back(right);
  }
}

// ---------------------------------------------------------------------------
// Unimodal maximization
// ---------------------------------------------------------------------------

struct Maximum {
  double argmax = 0.0;
  double value = 0.0;
};

/// Maximizes g on [lo, hi]. A 64-point scan graded toward both endpoints
/// selects the bracket, golden-section search refines it to `tolerance` in x.
/// NaN values of g are treated as -inf.
template <class G>
Maximum maximize_unimodal(G&& g, double lo, double hi, double tolerance = 1e-12) {
  if (!(lo < hi)) throw DomainError("maximize_unimodal: require lo < hi");
  auto eval = [&](double x) {
    const double v = g(x);
    return std::isnan(v) ? -kInf : v;
  };

  std::vector<double> xs;
  xs.reserve(64);
  const double width = hi - lo;
  constexpr int kPerSide = 31;
  const double ratio = std::pow(2e-12, 1.0 / kPerSide);
  xs.push_back(lo);
  for (int j = 0; j < kPerSide; ++j) xs.push_back(lo + width * 0.5 * std::pow(ratio, kPerSide - 1 - j));
  for (int j = 1; j <= kPerSide; ++j) xs.push_back(hi - width * 0.5 * std::pow(ratio, j));
  xs.push_back(hi);
  std::sort(xs.begin(), xs.end());

  std::vector<double> vs(xs.size());
  std::size_t best = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    vs[i] = eval(xs[i]);
    if (vs[i] > vs[best]) best = i;
  }

  double a = xs[best == 0 ? 0 : best - 1];
  double b = xs[best + 1 == xs.size() ? best : best + 1];
  Maximum result{xs[best], vs[best]};

  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = eval(c);
  double fd = eval(d);
  for (int iter = 0; iter < 200 && (b - a) > tolerance; ++iter) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = eval(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = eval(d);
    }
  }
  const double x = 0.5 * (a + b);
  const double fx = eval(x);
  for (auto [xi, fi] : {std::pair{x, fx}, std::pair{c, fc}, std::pair{d, fd}}) {
    if (fi > result.value) result = {xi, fi};
  }
  return result;
}

// ---------------------------------------------------------------------------
// Least squares
// ---------------------------------------------------------------------------

/// Solves min ||A x - y||_2 for a tall matrix given column-wise, by Householder
/// QR on unit-normalized columns.
inline std::vector<double> least_squares(const std::vector<std::vector<double>>& columns,
                                         std::span<const double> y) {
  const std::size_t k = columns.size();
  const std::size_t m = y.size();
  if (k == 0 || m < k) throw InsufficientDataError("least_squares: need at least as many rows as columns");
  for (const auto& c : columns) {
    if (c.size() != m) throw DomainError("least_squares: column length mismatch");
  }

  std::vector<double> scale(k);
  std::vector<std::vector<double>> a(k, std::vector<double>(m));
  for (std::size_t j = 0; j < k; ++j) {
    double norm = 0.0;
    for (double v : columns[j]) norm = std::hypot(norm, v);
    if (norm == 0.0) throw DomainError("least_squares: zero column");
    scale[j] = norm;
    for (std::size_t i = 0; i < m; ++i) a[j][i] = columns[j][i] / norm;
  }
  std::vector<double> rhs(y.begin(), y.end());

  for (std::size_t j = 0; j < k; ++j) {
    double norm = 0.0;
    for (std::size_t i = j; i < m; ++i) norm = std::hypot(norm, a[j][i]);
    if (norm == 0.0) throw DomainError("least_squares: rank deficient design");
    const double alpha = a[j][j] > 0 ? -norm : norm;
    std::vector<double> v(a[j].begin() + static_cast<std::ptrdiff_t>(j), a[j].end());
    v[0] -= alpha;
    double vnorm2 = 0.0;
    for (double x : v) vnorm2 += x * x;
    if (vnorm2 == 0.0) continue;
    auto reflect = [&](std::vector<double>& col) {
      double dot = 0.0;
      for (std::size_t i = j; i < m; ++i) dot += v[i - j] * col[i];
      const double f = 2.0 * dot / vnorm2;
      for (std::size_t i = j; i < m; ++i) col[i] -= f * v[i - j];
    };
    for (std::size_t jj = j; jj < k; ++jj) reflect(a[jj]);
    reflect(rhs);
  }

  std::vector<double> x(k);
  for (std::size_t jj = k; jj-- > 0;) {
    double acc = rhs[jj];
    for (std::size_t l = jj + 1; l < k; ++l) acc -= a[l][jj] * x[l];
    if (a[jj][jj] == 0.0) throw DomainError("least_squares: rank deficient design");
    x[jj] = acc / a[jj][jj];
  }
  for (std::size_t j = 0; j < k; ++j) x[j] /= scale[j];
  return x;
}

/// Least-squares slope of y against x.
inline double fit_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw InsufficientDataError("fit_slope: need two or more points");
  const auto n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) throw DomainError("fit_slope: degenerate abscissae");
  return sxy / sxx;
}

}  // namespace entire
