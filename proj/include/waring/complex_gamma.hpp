#pragma once

#include <complex>

namespace waring {

// log Gamma(s) for Re s > 0 by the Lanczos approximation (g = 607/128, 15
// terms). The imaginary part is only defined modulo 2 pi; use the result
// through exp(). Relative accuracy ~1e-14 across the half-plane, including
// large |Im s| where Gamma itself underflows.
std::complex<double> log_gamma(std::complex<double> s);

// exp(log_gamma(s)); underflows to 0 for |Im s| beyond ~450.
std::complex<double> gamma(std::complex<double> s);

}  // namespace waring
