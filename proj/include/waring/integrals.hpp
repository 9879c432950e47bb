#pragma once

// Mean values of the damped sums over [-xi, xi] and the full period, the
// Laplace transform check for z^(-mu), the fourth moment of S_2, and the
// sup-norm sweep of S_l - V_l.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "waring/gen_sums.hpp"
#include "waring/quadrature.hpp"

namespace waring {

struct LogLogFit {
  double slope = 0.0;
  double intercept = 0.0;  // log y = intercept + slope log x
};
// Least squares on (log x, log y); needs >= 2 points with x, y > 0.
LogLogFit fit_loglog(std::span<const double> x, std::span<const double> y);

struct LaplaceCheck {
  double mu = 1.0;
  std::uint64_t n = 1;
  std::uint64_t N = 2;
  std::complex<double> lhs;  // int_{-1/2}^{1/2} z^(-mu) e(-n alpha) d alpha
  double rhs = 0.0;          // exp(-n/N) n^(mu-1) / Gamma(mu)
  double err = 0.0;          // |lhs - rhs|
  double quad_error = 0.0;   // adaptive error estimate on lhs
  bool converged = false;
};
LaplaceCheck laplace_check(double mu, std::uint64_t n, std::uint64_t N);

enum class MeanIntegrand { s_tilde, v_tilde, e_tilde };
std::string_view to_string(MeanIntegrand m) noexcept;

struct MeanSquareOptions {
  double T = kDefaultDamping;
  // Grid route for S/V when the covering grid has at most this many nodes;
  // otherwise (and always for E) adaptive Gauss-Legendre.
  std::size_t max_grid = std::size_t{1} << 22;
  // Force a grid size (power of two) for S/V; 0 picks the covering grid.
  std::size_t grid_override = 0;
  double rel_tol = 1e-9;
};

struct MeanValueResult {
  std::string integrand;
  unsigned ell = 2;
  std::uint64_t N = 2;
  double xi = 0.5;
  std::size_t M = 0;        // grid size, 0 for the adaptive route
  std::string method;       // "grid-exact", "grid-masked", "adaptive", "coefficients"
  double value = 0.0;
  double quad_error = 0.0;  // adaptive estimate, 0 for exact routes
  double envelope = 0.0;    // predicted order of magnitude, constant 1
  double fitted_constant = 0.0;
  // S/V: xi N^(1/l) L + (L^2 if l <= 2 else 1)
  // E:   N^(1/l) xi L^2 (under RH); the unconditional shape
  //      N^(2/l - 1) exp(-(L/log L)^(1/3)) goes to alt_envelope.
  double alt_envelope = 0.0;
};

// int_{-xi}^{xi} |F|^2 for F in {S_l, V_l, E_l}; DomainError unless 0 < xi <= 1/2.
MeanValueResult mean_square(MeanIntegrand which, unsigned ell, std::uint64_t N, double xi,
                            const MeanSquareOptions& options = {});

// Full-period int |S_2|^4, equal to sum_s (sum_{a^2+b^2=s} c_a c_b)^2 with
// c_a = Lambda(a) exp(-a^2/N); envelope N L^2.
MeanValueResult fourth_power(std::uint64_t N, double T = kDefaultDamping);
// Same integral by the exact rectangle rule on a grid covering 2 F.
MeanValueResult fourth_power_grid(std::uint64_t N, double T = kDefaultDamping);

struct GapSweep {
  unsigned ell = 1;
  std::uint64_t N = 2;
  double max_abs = 0.0;     // max over the sampled alphas of |S_l - V_l|
  double argmax = 0.0;
  std::size_t samples = 0;
  double envelope = 0.0;    // N^(1/(2l))
  double fitted_constant = 0.0;
};
// Samples alpha_j = j/samples - 1/2 (which includes 0 for even counts).
GapSweep gap_sweep(unsigned ell, std::uint64_t N, std::size_t samples = 256,
                   double T = kDefaultDamping);

}  // namespace waring
