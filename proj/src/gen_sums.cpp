#include "waring/gen_sums.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "waring/errors.hpp"
#include "waring/phase.hpp"
#include "waring/prime_tools.hpp"
#include "waring/summation.hpp"

namespace waring {
namespace {

constexpr double kMaxProduct = 1125899906842624.0;  // 2^50

// sum_{n > n_max} log n exp(-n^l/N) <= exp(-T) sum_{j >= 1} (log n_max + j/n_max) q^j
// using n^l >= n_max^l + j l n_max^(l-1) and log(n_max + j) <= log n_max + j/n_max,
// with q = exp(-l n_max^(l-1) / N).
double tail_majorant(const DampedSumParams& p, std::uint64_t n_max) {
  const double nm = static_cast<double>(n_max);
  const double head = std::pow(nm, static_cast<double>(p.ell)) / static_cast<double>(p.N);
  const double step = p.ell * std::pow(nm, static_cast<double>(p.ell) - 1.0) /
                      static_cast<double>(p.N);
  const double q = std::exp(-step);
  const double one_minus_q = -std::expm1(-step);
  const double geo = q / one_minus_q;
  return std::exp(-head) * (std::log(nm) * geo + geo / (one_minus_q * nm));
}

}  // namespace

std::uint64_t DampedSumParams::n_max() const {
  validate();
  const long double target = static_cast<long double>(T) * static_cast<long double>(N);
  auto r = static_cast<std::uint64_t>(std::ceil(std::pow(target, 1.0L / ell)));
  auto power = [&](std::uint64_t c) {
    return std::pow(static_cast<long double>(c), static_cast<long double>(ell));
  };
  while (r > 2 && power(r - 1) >= target) --r;
  while (power(r) < target) ++r;
  return std::max<std::uint64_t>(r, 2);
}

void DampedSumParams::validate() const {
  if (ell < 1) throw DomainError("damped sum: l must be >= 1");
  if (N < 2) throw DomainError("damped sum: N must be >= 2");
  if (!(T > 0.0)) throw DomainError("damped sum: damping cutoff T must be positive");
  if (T * static_cast<double>(N) >= kMaxProduct) {
    throw CapacityError("damped sum: T*N too large for exact frequencies");
  }
}

std::complex<double> ComplexPoint::z() const noexcept {
  return {1.0 / static_cast<double>(N), -2.0 * std::numbers::pi * alpha};
}

DampedSum::DampedSum(const DampedSumParams& params, SumKind kind) : params_(params), kind_(kind) {
  const std::uint64_t n_max = params_.n_max();
  const double N = static_cast<double>(params_.N);

  struct Term {
    std::uint64_t n;
    double log_p;
  };
  std::vector<Term> terms;
  const std::uint64_t prime_bound =
      kind_ == SumKind::higher_powers ? integer_root(n_max, 2) : n_max;
  for (const std::uint64_t p : primes_up_to(prime_bound)) {
    const double lp = std::log(static_cast<double>(p));
    std::uint64_t q = p;
    for (unsigned j = 1;; ++j) {
      if (kind_ == SumKind::von_mangoldt || (kind_ == SumKind::primes && j == 1) ||
          (kind_ == SumKind::higher_powers && j >= 2)) {
        terms.push_back({q, lp});
      }
      if (kind_ == SumKind::primes || q > n_max / p) break;
      q *= p;
    }
  }
  std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.n < b.n; });

  CompensatedSum total;
  CompensatedSum squares;
  for (const Term& t : terms) {
    const std::uint64_t f = *checked_pow(t.n, params_.ell);
    const double c = t.log_p * std::exp(-static_cast<double>(f) / N);
    freqs_.push_back(f);
    coeffs_.push_back(c);
    total.add(c);
    squares.add(c * c);
  }
  at_zero_ = total.value();
  sum_sq_ = squares.value();
  tail_ = tail_majorant(params_, n_max);
}

std::complex<double> DampedSum::operator()(double alpha) const noexcept {
  CompensatedComplexSum acc;
  for (std::size_t i = 0; i < freqs_.size(); ++i) {
    acc.add(coeffs_[i] * unit_phase(static_cast<double>(freqs_[i]), alpha));
  }
  return acc.value();
}

CertifiedValue s_tilde(const DampedSumParams& params, double alpha) {
  const DampedSum s(params, SumKind::von_mangoldt);
  return {s(alpha), s.tail_bound()};
}

CertifiedValue v_tilde(const DampedSumParams& params, double alpha) {
  const DampedSum v(params, SumKind::primes);
  return {v(alpha), v.tail_bound()};
}

std::complex<double> u_kernel(double alpha, std::uint64_t H) noexcept {
  const double a = alpha - std::nearbyint(alpha);
  const double h = static_cast<double>(H);
  if (a == 0.0) return {h, 0.0};
  // sin(pi H a) with H a reduced modulo 2.
  const double p = h * a;
  const double err = std::fma(h, a, -p);
  const double r = (p - 2.0 * std::nearbyint(0.5 * p)) + err;
  const double ratio = std::sin(std::numbers::pi * r) / std::sin(std::numbers::pi * a);
  return unit_phase(h + 1.0, 0.5 * a) * ratio;
}

std::complex<double> u_kernel_direct(double alpha, std::uint64_t H) noexcept {
  CompensatedComplexSum acc;
  for (std::uint64_t m = 1; m <= H; ++m) acc.add(unit_phase(static_cast<double>(m), alpha));
  return acc.value();
}

std::complex<double> singular_factor(unsigned ell, const ComplexPoint& point) {
  if (ell < 1) throw DomainError("singular_factor: l must be >= 1");
  const double inv = 1.0 / static_cast<double>(ell);
  return std::tgamma(inv) / (static_cast<double>(ell) * std::pow(point.z(), inv));
}

std::complex<double> e_tilde(const DampedSum& sum, double alpha) {
  if (sum.kind() != SumKind::von_mangoldt) {
    throw DomainError("e_tilde: requires the von Mangoldt sum");
  }
  return sum(alpha) - singular_factor(sum.params().ell, {alpha, sum.params().N});
}

}  // namespace waring
