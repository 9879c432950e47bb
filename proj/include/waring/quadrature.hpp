#pragma once

// Two integration regimes over alpha in [-1/2, 1/2]:
//
//  * QuadratureGrid: the M-point rectangle rule at alpha_j = j/M - 1/2. For a
//    trigonometric polynomial whose frequencies all satisfy |f| < M it is
//    exact (discrete orthogonality), which turns Parseval-type identities into
//    rounding-level checks.
//  * integrate_adaptive: globally adaptive composite Gauss-Legendre for
//    integrands that are not trigonometric polynomials (powers of z).

#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "waring/gen_sums.hpp"

namespace waring {

class QuadratureGrid {
 public:
  // M must be a power of two >= 2.
  explicit QuadratureGrid(std::size_t M);

  // Smallest power-of-two grid integrating every |f| <= max_abs_frequency exactly.
  static QuadratureGrid covering(std::uint64_t max_abs_frequency);

  std::size_t size() const noexcept { return M_; }
  double spacing() const noexcept { return 1.0 / static_cast<double>(M_); }
  double node(std::size_t j) const noexcept {
    return static_cast<double>(j) / static_cast<double>(M_) - 0.5;
  }
  // Factors with frequencies in [-span, span] have products/conjugate
  // products that still integrate exactly: M >= 2 span + 1.
  std::uint64_t exactness_span() const noexcept { return (M_ - 1) / 2; }
  bool exact_for(std::uint64_t max_abs_frequency) const noexcept {
    return max_abs_frequency < M_;
  }

 private:
  std::size_t M_;
};

// (1/M) sum_j f(alpha_j), deterministic pairwise reduction.
std::complex<double> integrate_period(std::span<const std::complex<double>> samples,
                                      const QuadratureGrid& grid);
double integrate_period(std::span<const double> samples, const QuadratureGrid& grid);

// Values of a truncated sum at every grid node, by one backward FFT of the
// frequency-folded coefficients (FFTW, threaded).
std::vector<std::complex<double>> sample_on_grid(const DampedSum& sum, const QuadratureGrid& grid);
// Same values by direct summation with integer phase reduction; serial reference.
std::vector<std::complex<double>> sample_on_grid_direct(const DampedSum& sum,
                                                        const QuadratureGrid& grid);

// Quadrature weights for the sub-interval [-xi, xi] on the grid: each node
// carries the integral over [-xi, xi] of its piecewise-linear hat function,
// i.e. the trapezoid rule with linearly interpolated end cells. Interior
// nodes get exactly 1/M, so `1/M - w` is the complementary weight. xi >= 1/2
// yields the uniform rule.
std::vector<double> arc_weights(const QuadratureGrid& grid, double xi);

struct AdaptiveOptions {
  double rel_tol = 1e-10;
  double abs_tol = 0.0;
  std::size_t max_intervals = 400000;
  // Initial subdivision: uniform pieces across [a, b] ...
  std::size_t initial_pieces = 16;
  // ... plus geometric breakpoints toward `focus` (if inside [a, b]) down to
  // distance `focus_scale`. Zero disables grading.
  double focus = 0.0;
  double focus_scale = 0.0;
};

struct AdaptiveResult {
  std::complex<double> value;
  double error_estimate = 0.0;
  std::size_t evaluations = 0;
  std::size_t intervals = 0;
  bool converged = false;
};

using ComplexIntegrand = std::function<std::complex<double>(double)>;

// Each interval is estimated with a 16-point Gauss-Legendre rule on the whole
// and on both halves; the worst interval is bisected until the summed error
// estimate meets max(abs_tol, rel_tol |value|) or the interval budget runs out.
AdaptiveResult integrate_adaptive(const ComplexIntegrand& f, double a, double b,
                                  const AdaptiveOptions& options = {});

}  // namespace waring
