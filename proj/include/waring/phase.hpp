#pragma once

#include <cmath>
#include <complex>
#include <numbers>

namespace waring {

// Fractional part of m * alpha in [-1/2, 1/2], carried to full double
// precision. m must be an integer-valued double below 2^53; the rounding
// error of the product is recovered exactly with an FMA.
inline double reduced_product(double m, double alpha) noexcept {
  const double p = m * alpha;
  const double err = std::fma(m, alpha, -p);
  const double r = p - std::nearbyint(p);
  return r + err;
}

// e(m * alpha) = exp(2 pi i m alpha) with exact argument reduction.
inline std::complex<double> unit_phase(double m, double alpha) noexcept {
  const double t = 2.0 * std::numbers::pi * reduced_product(m, alpha);
  return {std::cos(t), std::sin(t)};
}

}  // namespace waring
