#pragma once

// Independent reference computations for the tests. Nothing here calls into
// the library: sums are done term by term in long double, integrals by
// composite Simpson, maxima by dense grids, integer approximation by brute force.

#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <vector>

namespace oracle {

/// Composite Simpson on [a, b] with an even number of panels.
inline long double simpson(const std::function<long double(long double)>& f, long double a, long double b,
                           int panels = 20000) {
  if (panels % 2) ++panels;
  const long double h = (b - a) / panels;
  long double acc = f(a) + f(b);
  for (int i = 1; i < panels; ++i) acc += f(a + i * h) * (i % 2 ? 4.0L : 2.0L);
  return acc * h / 3.0L;
}

/// B(4, 1/2) = int_0^1 t^3 (1-t)^(-1/2) dt; t = 1 - u^2 turns it into
/// int_0^1 2 (1 - u^2)^3 du, a smooth polynomial integrand.
inline long double beta_4_half() {
  return simpson([](long double u) { return 2.0L * std::pow(1.0L - u * u, 3); }, 0.0L, 1.0L, 20000);
}

inline long double factorial(int n) {
  long double v = 1.0L;
  for (int k = 2; k <= n; ++k) v *= k;
  return v;
}

/// sum_{k=from}^{from+terms-1} term(k).
inline long double series(const std::function<long double(int)>& term, int from, int terms) {
  long double acc = 0.0L;
  for (int k = from + terms - 1; k >= from; --k) acc += term(k);  // small terms first
  return acc;
}

struct GridMax {
  double argmax;
  double value;
};

/// Dense uniform grid over [lo, hi] with `points` samples.
inline GridMax grid_max(const std::function<double(double)>& g, double lo, double hi, int points = 100000) {
  GridMax best{lo, -std::numeric_limits<double>::infinity()};
  for (int i = 0; i < points; ++i) {
    const double x = lo + (hi - lo) * i / (points - 1);
    const double v = g(x);
    if (v > best.value) best = {x, v};
  }
  return best;
}

/// min over Gaussian-integer polynomials a_0..a_{n-1} with |re|, |im| <= box
/// of the Hardy(2) distance || f - p || where f has the given coefficients
/// (c_0..c_{n-1}) and tail norm^2 `tail2`. Exhaustive; n <= 4 only.
inline double hardy_integer_distance(const std::vector<std::complex<double>>& c, double tail2, int box = 2) {
  const int n = static_cast<int>(c.size());
  double best = std::numeric_limits<double>::infinity();
  const int side = 2 * box + 1;
  long long total = 1;
  for (int i = 0; i < 2 * n; ++i) total *= side;
  for (long long code = 0; code < total; ++code) {
    long long rest = code;
    double acc = tail2;
    for (int k = 0; k < n; ++k) {
      const int re = static_cast<int>(rest % side) - box;
      rest /= side;
      const int im = static_cast<int>(rest % side) - box;
      rest /= side;
      acc += std::norm(c[k] - std::complex<double>(re, im));
    }
    best = std::min(best, acc);
  }
  return std::sqrt(best);
}

/// (1/2pi) int_0^{2pi} sum_k c_k (z e^{it})^k g(t) dt at a point z, by the
/// periodic trapezoid rule (exact for trigonometric polynomials of degree < samples).
inline std::complex<double> convolve_at(const std::vector<std::complex<double>>& c,
                                        const std::function<std::complex<double>(double)>& g, std::complex<double> z,
                                        int samples = 256) {
  std::complex<double> acc = 0.0;
  for (int j = 0; j < samples; ++j) {
    const double t = 2.0 * M_PI * j / samples;
    std::complex<double> f = 0.0;
    const std::complex<double> w = z * std::polar(1.0, t);
    std::complex<double> power = 1.0;
    for (const auto& ck : c) {
      f += ck * power;
      power *= w;
    }
    acc += f * g(t);
  }
  return acc / static_cast<double>(samples);
}

}  // namespace oracle
