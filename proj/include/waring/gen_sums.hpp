#pragma once

// Exponentially damped generating sums over primes and prime powers,
//
//   S_l(alpha) = sum_n Lambda(n) exp(-n^l/N) e(n^l alpha)
//   V_l(alpha) = sum_p log p    exp(-p^l/N) e(p^l alpha)
//
// truncated at n^l <= T N, together with the interval kernel U(alpha, H),
// the singular factor Gamma(1/l) / (l z^(1/l)) with z = 1/N - 2 pi i alpha,
// and E_l = S_l - singular factor.

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace waring {

inline constexpr double kDefaultDamping = 40.0;

struct DampedSumParams {
  unsigned ell = 1;
  std::uint64_t N = 2;
  double T = kDefaultDamping;

  // ceil((T N)^(1/l)); every dropped term has exp(-n^l/N) <= exp(-T).
  std::uint64_t n_max() const;
  // DomainError on l < 1, N < 2, T <= 0; CapacityError if (T N) >= 2^50.
  void validate() const;
};

struct ComplexPoint {
  double alpha = 0.0;
  std::uint64_t N = 2;

  std::complex<double> z() const noexcept;
};

enum class SumKind {
  von_mangoldt,   // S_l: every prime power p^j, weight log p
  primes,         // V_l: primes only
  higher_powers,  // S_l - V_l: prime powers p^j with j >= 2
};

// Immutable truncated sum: a sparse trigonometric polynomial with
// nonnegative coefficients at integer frequencies n^l.
class DampedSum {
 public:
  DampedSum(const DampedSumParams& params, SumKind kind);

  const DampedSumParams& params() const noexcept { return params_; }
  SumKind kind() const noexcept { return kind_; }
  std::size_t size() const noexcept { return freqs_.size(); }
  std::span<const std::uint64_t> frequencies() const noexcept { return freqs_; }
  std::span<const double> coefficients() const noexcept { return coeffs_; }
  std::uint64_t max_frequency() const noexcept { return freqs_.empty() ? 0 : freqs_.back(); }

  // Point evaluation with exact per-term argument reduction.
  std::complex<double> operator()(double alpha) const noexcept;

  // Value at alpha = 0 (sum of coefficients), the maximum of |sum| over alpha.
  double at_zero() const noexcept { return at_zero_; }
  // Sum of squared coefficients: the full-period mean of |sum|^2.
  double sum_of_squares() const noexcept { return sum_sq_; }

  // Bound on |dropped tail| from the majorant sum_{n > n_max} log n exp(-n^l/N).
  double tail_bound() const noexcept { return tail_; }

 private:
  DampedSumParams params_;
  SumKind kind_;
  std::vector<std::uint64_t> freqs_;  // ascending
  std::vector<double> coeffs_;
  double at_zero_ = 0.0;
  double sum_sq_ = 0.0;
  double tail_ = 0.0;
};

struct CertifiedValue {
  std::complex<double> value;
  double tail_bound;
};

CertifiedValue s_tilde(const DampedSumParams& params, double alpha);
CertifiedValue v_tilde(const DampedSumParams& params, double alpha);

// U(alpha, H) = sum_{m=1}^H e(m alpha), via e((H+1)alpha/2) sin(pi H alpha)/sin(pi alpha).
std::complex<double> u_kernel(double alpha, std::uint64_t H) noexcept;
// Direct summation; reference for tests.
std::complex<double> u_kernel_direct(double alpha, std::uint64_t H) noexcept;

// Gamma(1/l) / (l z^(1/l)), principal branch (Re z > 0).
std::complex<double> singular_factor(unsigned ell, const ComplexPoint& point);

// E_l(alpha) = S_l(alpha) - singular factor; `sum` must be of kind von_mangoldt.
std::complex<double> e_tilde(const DampedSum& sum, double alpha);

}  // namespace waring
