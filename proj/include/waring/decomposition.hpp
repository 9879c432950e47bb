#pragma once

// The window sum sum_{n=N+1}^{N+H} exp(-n/N) r_k(n) as the period integral of
// V_k V_2^2 U(-alpha, H) e(-N alpha), and its splitting into six terms
// (major arc |alpha| <= B/H plus minor arc) or five full-period terms.
//
// All terms are integrated on one grid from the same samples, so their sum
// reproduces the single integral to rounding.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "waring/gen_sums.hpp"
#include "waring/quadrature.hpp"
#include "waring/rep_count.hpp"

namespace waring {

enum class SplitMode { unconditional, conditional };
std::string_view to_string(SplitMode m) noexcept;
// ConfigError on anything else.
SplitMode parse_split_mode(std::string_view s);

// exp(d (L / log L)^(1/3)), L = log N.
double default_B(std::uint64_t N, double d = 1.0);
// The d for which default_B(N, d) == B.
double implied_d(std::uint64_t N, double B);

struct SplitConfig {
  IntervalSpec spec;
  double B = 0.0;  // 0 selects default_B(N)
  SplitMode mode = SplitMode::unconditional;
  double T = kDefaultDamping;

  double effective_B() const { return B > 0.0 ? B : default_B(spec.N); }
  // ConfigError unless 0 < B/H <= 1/2 (unconditional mode); spec checks as usual.
  void validate() const;
};

// Smallest power of two M for which the rectangle rule integrates every
// product below exactly: M > max(N + H, F_k + 2 F_2 - N - 1).
std::size_t required_grid_size(const IntervalSpec& spec, double T = kDefaultDamping);

struct IdentityResult {
  double lhs = 0.0;               // window sum from enumeration
  std::complex<double> rhs;       // grid integral
  double residual = 0.0;          // |lhs - Re rhs|
  double relative = 0.0;          // residual / max(|lhs|, main-term scale)
  std::size_t M = 0;
};
// GridError (with the required M) if `M` is given and too small.
IdentityResult fundamental_identity(const IntervalSpec& spec, double T = kDefaultDamping,
                                    std::optional<std::size_t> M = std::nullopt);

struct TermValue {
  std::string name;
  std::complex<double> value;
  double bound = 0.0;            // error shape with constant 1
  double fitted_constant = 0.0;  // |value| / bound (J1/I1: |value - main| / bound)
};

struct DecompositionReport {
  SplitConfig config;
  double B = 0.0;
  double d = 0.0;
  std::size_t M = 0;
  std::vector<TermValue> terms;
  double lhs = 0.0;                  // enumeration
  std::complex<double> integral;     // undivided grid integral
  std::complex<double> rhs_total;    // sum of the terms
  double partition_residual = 0.0;   // |rhs_total - integral| / |integral|
  double reconstruction_residual = 0.0;  // |lhs - Re rhs_total| / |lhs|
  double imag_ratio = 0.0;           // |Im rhs_total| / |Re rhs_total|
  double main_term_prediction = 0.0; // (pi/(4e)) H N^(1/k)
};

DecompositionReport split_terms(const SplitConfig& config,
                                std::optional<std::size_t> M = std::nullopt);

// J1 by adaptive quadrature over [-B/H, B/H]; usable when the exact grid is
// out of reach. The integrand is pi Gamma(1/k)/(4k) z^(-1-1/k) U(-alpha,H) e(-N alpha).
AdaptiveResult major_arc_main_term(const IntervalSpec& spec, double B);

struct Unweighted {
  double estimate = 0.0;          // e * weighted_sum
  double correction_bound = 0.0;  // (H/N) e^2 * weighted_sum
};
Unweighted unweight(const IntervalSpec& spec, double weighted_sum);

}  // namespace waring
