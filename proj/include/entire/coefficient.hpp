#pragma once

#include <complex>
#include <optional>

#include "entire/numerics.hpp"

namespace entire {

/// One Taylor coefficient as (log-magnitude, phase).
struct Coefficient {
  LogReal magnitude;
  double phase = 0.0;

  static Coefficient from_complex(std::complex<double> c) {
    return {LogReal::from_linear(std::abs(c)), c == 0.0 ? 0.0 : std::arg(c)};
  }

  /// Linear value when |c| lies in [1e-300, 1e300]; exact zero maps to 0.
  std::optional<std::complex<double>> to_complex() const {
    if (magnitude.is_zero()) return std::complex<double>{0.0, 0.0};
    constexpr double kLo = -690.7755278982137;  // log(1e-300)
    constexpr double kHi = 690.7755278982137;
    if (magnitude.log() < kLo || magnitude.log() > kHi) return std::nullopt;
    return std::polar(magnitude.linear(), phase);
  }
};

}  // namespace entire
