#pragma once

// Zero-sum side of the explicit formula
//
//   S_l(alpha) = Gamma(1/l)/(l z^(1/l)) - (1/l) sum_rho z^(-rho/l) Gamma(rho/l) + O_l(1)
//
// evaluated with a finite table of zeta zeros rho = 1/2 +- i gamma.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "waring/gen_sums.hpp"

namespace waring {

// Reference ordinates used to validate loaded tables.
inline constexpr double kFirstZeroOrdinates[] = {14.134725141734693, 21.022039638771555,
                                                 25.010857580145689, 30.424876125859513,
                                                 32.935061587739190};
inline constexpr double kZeroValidationTol = 1e-4;

struct ZeroTable {
  std::vector<double> gammas;  // strictly ascending, positive
  std::string source;

  std::size_t size() const noexcept { return gammas.size(); }
};

// One positive decimal per line, ascending; blank lines and lines starting
// with '#' are skipped. ParseError carries the offending line number.
ZeroTable parse_zeros(std::istream& in, std::string source);
// Opens and parses `path`; throws std::system_error-derived
// std::filesystem::filesystem_error if the file cannot be opened.
ZeroTable load_zeros(const std::filesystem::path& path);

struct ZeroSum {
  std::complex<double> value;  // (1/l) sum over rho and conj(rho) of z^(-rho/l) Gamma(rho/l)
  std::size_t used = 0;        // zero pairs taken from the table
  std::size_t skipped = 0;     // terms with log-magnitude below kZeroTermFloor
};

inline constexpr double kZeroTermFloor = -60.0;

ZeroSum zero_sum(const ZeroTable& table, unsigned ell, const ComplexPoint& point,
                 std::size_t k_used);

struct ExplicitApprox {
  unsigned ell = 1;
  std::uint64_t N = 2;
  double alpha = 0.0;
  std::size_t k_used = 0;
  std::complex<double> main;      // Gamma(1/l)/(l z^(1/l))
  std::complex<double> zero_sum;  // (1/l) sum_rho z^(-rho/l) Gamma(rho/l)
  std::complex<double> s_value;   // S_l(alpha)
  std::complex<double> residual;  // s_value - main + zero_sum
  std::size_t skipped = 0;
};

// `sum` must be the von Mangoldt sum for (l, N).
ExplicitApprox explicit_residual(const ZeroTable& table, const DampedSum& sum, double alpha,
                                 std::size_t k_used);
ExplicitApprox explicit_residual(const ZeroTable& table, unsigned ell, std::uint64_t N,
                                 double alpha, std::size_t k_used,
                                 double T = kDefaultDamping);

}  // namespace waring
