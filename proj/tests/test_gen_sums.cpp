#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "oracles.hpp"
#include "waring/errors.hpp"
#include "waring/gen_sums.hpp"

using namespace waring;
using Big = boost::multiprecision::cpp_bin_float_50;

namespace {

// sum_{n <= n_max} w(n) exp(-n^l/N) e(n^l alpha) with the phase reduced in
// 50-digit arithmetic; w = Lambda (primes_only = false) or log p on primes.
std::complex<double> reference_sum(unsigned ell, std::uint64_t N, std::uint64_t n_max,
                                   double alpha, bool primes_only) {
  std::complex<long double> acc = 0;
  const Big a(alpha);
  for (std::uint64_t n = 2; n <= n_max; ++n) {
    const unsigned j = oracle::prime_power_exponent(n);
    if (j == 0 || (primes_only && j != 1)) continue;
    const double w = oracle::von_mangoldt(n);
    Big f = 1;
    for (unsigned i = 0; i < ell; ++i) f *= n;
    Big x = f * a;
    x -= boost::multiprecision::round(x);
    const double t = 2.0 * std::numbers::pi * static_cast<double>(x);
    const double damp = std::exp(-static_cast<double>(f) / static_cast<double>(N));
    acc += static_cast<long double>(w * damp) *
           std::complex<long double>(std::cos(t), std::sin(t));
  }
  return {static_cast<double>(acc.real()), static_cast<double>(acc.imag())};
}

}  // namespace

TEST_CASE("truncation point") {
  const DampedSumParams p{2, 10'000, 40.0};
  const std::uint64_t m = p.n_max();
  CHECK(static_cast<double>(m) * static_cast<double>(m) >= 400'000.0);
  CHECK(static_cast<double>(m - 1) * static_cast<double>(m - 1) < 400'000.0);
  CHECK(DampedSumParams{1, 1000, 40.0}.n_max() == 40'000);
  CHECK_THROWS_AS(DampedSumParams({0, 100, 40.0}).validate(), DomainError);
  CHECK_THROWS_AS(DampedSumParams({1, 1, 40.0}).validate(), DomainError);
  CHECK_THROWS_AS(DampedSumParams({1, 100, 0.0}).validate(), DomainError);
  CHECK_THROWS_AS(DampedSumParams({1, std::uint64_t{1} << 46, 40.0}).validate(), CapacityError);
}

TEST_CASE("point values against a 50-digit phase reference") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> unif(-0.5, 0.5);
  for (unsigned ell : {1u, 2u, 3u}) {
    const std::uint64_t N = ell == 1 ? 2000 : 20'000;
    const DampedSumParams p{ell, N, 40.0};
    const DampedSum s(p, SumKind::von_mangoldt);
    const DampedSum v(p, SumKind::primes);
    for (int i = 0; i < 6; ++i) {
      const double alpha = unif(rng);
      const auto rs = reference_sum(ell, N, p.n_max(), alpha, false);
      const auto rv = reference_sum(ell, N, p.n_max(), alpha, true);
      CHECK(std::abs(s(alpha) - rs) <= 1e-12 * s.at_zero());
      CHECK(std::abs(v(alpha) - rv) <= 1e-12 * v.at_zero());
    }
  }
}

TEST_CASE("alternating value at alpha = 1/2") {
  const std::uint64_t N = 10'000;
  const DampedSum s({2, N, 40.0}, SumKind::von_mangoldt);
  double ref = 0.0;
  for (std::uint64_t n = 2; n <= s.params().n_max(); ++n) {
    const double sign = (n % 2 == 0) ? 1.0 : -1.0;
    ref += oracle::von_mangoldt(n) * sign * std::exp(-static_cast<double>(n * n) / N);
  }
  const auto val = s(0.5);
  CHECK(val.real() == doctest::Approx(ref).epsilon(1e-12));
  CHECK(std::abs(val.imag()) < 1e-12 * s.at_zero());
}

TEST_CASE("prime sum at alpha = 0 in extended precision") {
  const DampedSumParams p{1, 100, 40.0};
  Big ref = 0;
  for (std::uint64_t n : oracle::trial_primes(p.n_max())) {
    ref += boost::multiprecision::log(Big(n)) * boost::multiprecision::exp(-Big(n) / 100);
  }
  const CertifiedValue v = v_tilde(p, 0.0);
  CHECK(v.value.real() == doctest::Approx(static_cast<double>(ref)).epsilon(1e-14));
  CHECK(v.value.imag() == 0.0);
  CHECK(v.value.real() > 0.0);
}

TEST_CASE("symmetry and maximum at zero") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> unif(-0.5, 0.5);
  for (unsigned ell : {1u, 2u, 3u}) {
    const DampedSum s({ell, 5000, 40.0}, SumKind::von_mangoldt);
    const DampedSum v({ell, 5000, 40.0}, SumKind::primes);
    for (int i = 0; i < 200; ++i) {
      const double a = unif(rng);
      CHECK(std::abs(s(-a) - std::conj(s(a))) <= 1e-13 * s.at_zero());
      CHECK(std::abs(v(-a) - std::conj(v(a))) <= 1e-13 * v.at_zero());
      CHECK(std::abs(u_kernel(-a, 37) - std::conj(u_kernel(a, 37))) <= 1e-12);
      CHECK(std::abs(s(a)) <= s.at_zero() * (1 + 1e-14));
      CHECK(std::abs(v(a)) <= v.at_zero() * (1 + 1e-14));
    }
  }
}

TEST_CASE("truncation certificate") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> unif(-0.5, 0.5);
  for (double T : {10.0, 20.0, 40.0}) {
    const DampedSum a({2, 5000, T}, SumKind::von_mangoldt);
    const DampedSum b({2, 5000, 2 * T}, SumKind::von_mangoldt);
    for (int i = 0; i < 20; ++i) {
      const double alpha = unif(rng);
      CHECK(std::abs(a(alpha) - b(alpha)) < 10 * std::exp(-T) * a.at_zero() + 1e-12);
    }
  }
  // The majorant bounds the actual dropped tail.
  const DampedSum s({1, 1000, 5.0}, SumKind::von_mangoldt);
  double tail = 0.0;
  for (std::uint64_t n = s.params().n_max() + 1; n <= 60'000; ++n) {
    tail += oracle::von_mangoldt(n) * std::exp(-static_cast<double>(n) / 1000.0);
  }
  CHECK(tail > 0.0);
  CHECK(tail <= s.tail_bound());
  CHECK(s.tail_bound() < 10 * tail);
}

TEST_CASE("gap between prime powers and primes") {
  const DampedSum s({2, 1'000'000, 40.0}, SumKind::von_mangoldt);
  const DampedSum v({2, 1'000'000, 40.0}, SumKind::primes);
  const DampedSum g({2, 1'000'000, 40.0}, SumKind::higher_powers);
  CHECK(s.size() == v.size() + g.size());
  CHECK(g.at_zero() == doctest::Approx(s.at_zero() - v.at_zero()).epsilon(1e-12));
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> unif(-0.5, 0.5);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double a = unif(rng);
    worst = std::max(worst, std::abs(s(a) - v(a)));
  }
  CHECK(worst / std::pow(1e6, 0.25) <= 3.0);
}

TEST_CASE("interval kernel") {
  CHECK(u_kernel(0.0, 25) == std::complex<double>(25.0, 0.0));
  CHECK(std::abs(u_kernel(0.5, 4)) < 1e-15);
  CHECK(std::abs(u_kernel(1.0, 7) - 7.0) < 1e-13);
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> unif(-0.5, 0.5);
  for (int i = 0; i < 2000; ++i) {
    const double a = unif(rng);
    const std::uint64_t H = 1 + rng() % 3000;
    REQUIRE(std::abs(u_kernel(a, H) - u_kernel_direct(a, H)) < 1e-11 * static_cast<double>(H));
  }
  for (int j = 1; j <= 100'000; ++j) {
    const double a = j / 200'000.0;
    const std::uint64_t H = 1 + static_cast<std::uint64_t>(j) % 5000;
    REQUIRE(std::abs(u_kernel(a, H)) <= std::min(static_cast<double>(H), 1.0 / a) * (1 + 1e-12));
  }
}

TEST_CASE("singular factor") {
  CHECK(singular_factor(2, {0.0, 10'000}).real() ==
        doctest::Approx(50 * std::sqrt(std::numbers::pi)).epsilon(1e-14));
  CHECK(singular_factor(2, {0.0, 10'000}).real() == doctest::Approx(88.6227).epsilon(1e-6));
  CHECK(singular_factor(1, {0.0, 1000}) == std::complex<double>(1000.0, 0.0));
  for (double a : {1e-5, 0.01, 0.3}) {
    for (unsigned l : {1u, 2u, 3u}) {
      CHECK(std::abs(singular_factor(l, {-a, 5000}) - std::conj(singular_factor(l, {a, 5000}))) <
            1e-12 * std::abs(singular_factor(l, {a, 5000})));
    }
  }
  CHECK_THROWS_AS(singular_factor(0, {0.0, 10}), DomainError);
}

TEST_CASE("main term captures the bulk at alpha = 0") {
  const DampedSum s1({1, 1000, 40.0}, SumKind::von_mangoldt);
  CHECK(std::abs(s1.at_zero() - 1000.0) < 0.05 * 1000.0);

  const DampedSum big({1, 1'000'000, 40.0}, SumKind::von_mangoldt);
  CHECK(std::abs(e_tilde(big, 0.0)) < 0.05 * big.at_zero());

  const DampedSum s2({2, 1'000'000, 40.0}, SumKind::von_mangoldt);
  const double a = 1e-7;
  CHECK(e_tilde(s2, a) == s2(a) - singular_factor(2, {a, 1'000'000}));
  CHECK(std::abs(e_tilde(s2, -a) - std::conj(e_tilde(s2, a))) < 1e-9 * s2.at_zero());
  CHECK_THROWS_AS(e_tilde(DampedSum({2, 100, 40.0}, SumKind::primes), 0.0), DomainError);
}
