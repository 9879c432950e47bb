#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "waring/errors.hpp"
#include "waring/integrals.hpp"
#include "waring/phase.hpp"
#include "waring/quadrature.hpp"

using namespace waring;

TEST_CASE("grid basics") {
  const QuadratureGrid g(1024);
  CHECK(g.node(0) == -0.5);
  CHECK(g.node(512) == 0.0);
  CHECK(g.exactness_span() == 511);
  CHECK(g.exact_for(1023));
  CHECK_FALSE(g.exact_for(1024));
  CHECK(QuadratureGrid::covering(1023).size() == 1024);
  CHECK(QuadratureGrid::covering(1024).size() == 2048);
  CHECK_THROWS_AS(QuadratureGrid(1000), DomainError);
  CHECK_THROWS_AS(QuadratureGrid(1), DomainError);
}

TEST_CASE("orthogonality") {
  const QuadratureGrid g(std::size_t{1} << 16);
  std::vector<std::complex<double>> f(g.size());
  std::mt19937_64 rng(2);
  for (int t = 0; t < 100; ++t) {
    const auto n = static_cast<std::int64_t>(1 + rng() % (g.size() - 1)) *
                   ((rng() & 1) ? 1 : -1);
    for (std::size_t j = 0; j < g.size(); ++j) {
      f[j] = unit_phase(static_cast<double>(n), g.node(j));
    }
    REQUIRE(std::abs(integrate_period(f, g)) < 1e-13);
  }
  std::fill(f.begin(), f.end(), 1.0);
  CHECK(integrate_period(f, g) == std::complex<double>(1.0, 0.0));
}

TEST_CASE("FFT sampling equals direct summation") {
  for (unsigned ell : {1u, 2u, 3u}) {
    const DampedSum s({ell, 300, 40.0}, SumKind::von_mangoldt);
    const QuadratureGrid g(4096);  // smaller than the frequency span: folding is exercised
    const auto fast = sample_on_grid(s, g);
    const auto slow = sample_on_grid_direct(s, g);
    for (std::size_t j = 0; j < g.size(); ++j) {
      REQUIRE(std::abs(fast[j] - slow[j]) < 1e-11 * s.at_zero());
    }
    for (std::size_t j = 0; j < g.size(); j += 97) {
      REQUIRE(std::abs(fast[j] - s(g.node(j))) < 1e-11 * s.at_zero());
    }
  }
}

TEST_CASE("arc weights") {
  const QuadratureGrid g(1 << 12);
  for (double xi : {1e-5, 3.3e-4, 0.01, 0.1234, 0.4999, 0.5}) {
    const auto w = arc_weights(g, xi);
    double total = 0.0;
    for (double x : w) {
      REQUIRE(x >= 0.0);
      REQUIRE(x <= g.spacing() * (1 + 1e-15));
      total += x;
    }
    CHECK(total == doctest::Approx(std::min(2 * xi, 1.0)).epsilon(1e-12));
    // Exact for linear functions on the interval.
    double first = 0.0;
    for (std::size_t j = 0; j < g.size(); ++j) first += w[j] * (g.node(j) + 0.25);
    if (xi < 0.5 - g.spacing()) CHECK(first == doctest::Approx(0.25 * 2 * xi).epsilon(1e-10));
  }
  CHECK_THROWS_AS(arc_weights(g, 0.0), DomainError);
}

TEST_CASE("adaptive integrator") {
  const auto r1 = integrate_adaptive([](double x) { return std::complex<double>(1 / (1 + x * x)); },
                                     -1.0, 1.0);
  CHECK(r1.converged);
  CHECK(r1.value.real() == doctest::Approx(std::numbers::pi / 2).epsilon(1e-12));

  AdaptiveOptions opt;
  opt.initial_pieces = 64;
  opt.rel_tol = 1e-12;
  const auto r2 = integrate_adaptive([](double x) { return unit_phase(300.0, x); }, 0.0, 0.3, opt);
  const std::complex<double> exact =
      (unit_phase(300.0, 0.3) - 1.0) / std::complex<double>(0.0, 2 * std::numbers::pi * 300);
  CHECK(std::abs(r2.value - exact) < 1e-13);

  // Narrow peak, found by grading toward the focus point.
  AdaptiveOptions peak;
  peak.focus = 0.1;
  peak.focus_scale = 1e-7;
  const double eps = 1e-6;
  const auto r3 = integrate_adaptive(
      [&](double x) { return std::complex<double>(eps / ((x - 0.1) * (x - 0.1) + eps * eps)); },
      -0.5, 0.5, peak);
  const double exact3 = std::atan(0.4 / eps) + std::atan(0.6 / eps);
  CHECK(r3.value.real() == doctest::Approx(exact3).epsilon(1e-9));
  CHECK_THROWS_AS(integrate_adaptive([](double) { return std::complex<double>(1); }, 1.0, 0.0),
                  DomainError);
}

TEST_CASE("log-log fit") {
  const std::vector<double> x{10, 100, 1000};
  const std::vector<double> y{3 * std::pow(10, 0.7), 3 * std::pow(100, 0.7),
                              3 * std::pow(1000, 0.7)};
  const LogLogFit f = fit_loglog(x, y);
  CHECK(f.slope == doctest::Approx(0.7).epsilon(1e-12));
  CHECK(std::exp(f.intercept) == doctest::Approx(3.0).epsilon(1e-12));
  CHECK_THROWS_AS(fit_loglog(std::vector<double>{1.0}, std::vector<double>{1.0}), DomainError);
}

TEST_CASE("Laplace transform") {
  const LaplaceCheck a = laplace_check(1.0, 100, 1000);
  CHECK(a.rhs == doctest::Approx(std::exp(-0.1)).epsilon(1e-15));
  CHECK(a.rhs == doctest::Approx(0.904837).epsilon(1e-6));
  CHECK(a.converged);
  CHECK(a.err * 100 < 1.0);

  const LaplaceCheck b = laplace_check(0.5, 500, 1000);
  CHECK(b.rhs == doctest::Approx(0.015298).epsilon(1e-4));
  CHECK(b.err * 500 < 1.0);

  std::vector<double> ns, errs;
  for (std::uint64_t n : {100ULL, 1000ULL, 10000ULL}) {
    const LaplaceCheck c = laplace_check(1.5, n, 1000);
    CHECK(c.converged);
    ns.push_back(static_cast<double>(n));
    errs.push_back(c.err);
  }
  CHECK(fit_loglog(ns, errs).slope <= -0.9);
  CHECK_THROWS_AS(laplace_check(0.0, 10, 100), DomainError);
}

TEST_CASE("Parseval on the full period") {
  for (unsigned ell : {1u, 2u, 3u}) {
    for (MeanIntegrand which : {MeanIntegrand::s_tilde, MeanIntegrand::v_tilde}) {
      const std::uint64_t N = 10'000;
      const MeanValueResult r = mean_square(which, ell, N, 0.5);
      CHECK(r.method == "grid-exact");
      const DampedSum s({ell, N, 40.0},
                        which == MeanIntegrand::s_tilde ? SumKind::von_mangoldt : SumKind::primes);
      CHECK(r.value == doctest::Approx(s.sum_of_squares()).epsilon(1e-10));
    }
  }
  // Coefficient sum by the trial-division oracle.
  const std::uint64_t N = 10'000;
  const DampedSum s({2, N, 40.0}, SumKind::von_mangoldt);
  double ref = 0.0;
  for (std::uint64_t n = 2; n <= s.params().n_max(); ++n) {
    const double c = oracle::von_mangoldt(n) * std::exp(-static_cast<double>(n * n) / N);
    ref += c * c;
  }
  CHECK(mean_square(MeanIntegrand::s_tilde, 2, N, 0.5).value == doctest::Approx(ref).epsilon(1e-10));
}

TEST_CASE("sub-interval mean squares") {
  const std::uint64_t N = 10'000;
  double prev = 1e300;
  for (double xi : {0.5, 0.1, 1e-2, 1e-3, 1e-4, 1e-5}) {
    const MeanValueResult r = mean_square(MeanIntegrand::s_tilde, 2, N, xi);
    CHECK(r.value > 0.0);
    CHECK(r.value < prev);
    prev = r.value;
  }
  // Grid doubling and the adaptive route agree on a masked interval.
  MeanSquareOptions base;
  const MeanValueResult a = mean_square(MeanIntegrand::s_tilde, 2, N, 3e-3, base);
  base.grid_override = 2 * a.M;
  const MeanValueResult b = mean_square(MeanIntegrand::s_tilde, 2, N, 3e-3, base);
  CHECK(std::abs(a.value - b.value) < 1e-3 * b.value);
  MeanSquareOptions adaptive;
  adaptive.max_grid = 2;
  const MeanValueResult c = mean_square(MeanIntegrand::s_tilde, 2, N, 3e-3, adaptive);
  CHECK(c.method == "adaptive");
  CHECK(std::abs(a.value - c.value) < 1e-3 * c.value);

  // E_l over short arcs, with the N^(1/l) xi L^2 shape.
  double prev_e = 1e300;
  for (double xi : {1e-2, 1e-3, 1e-4, 1e-5}) {
    const MeanValueResult e = mean_square(MeanIntegrand::e_tilde, 2, N, xi);
    CHECK(e.method == "adaptive");
    CHECK(e.value >= 0.0);
    CHECK(e.value < prev_e);
    CHECK(e.fitted_constant <= 10.0);
    prev_e = e.value;
  }
  CHECK_THROWS_AS(mean_square(MeanIntegrand::s_tilde, 2, N, 0.0), DomainError);
  CHECK_THROWS_AS(mean_square(MeanIntegrand::s_tilde, 2, N, 0.6), DomainError);
}

TEST_CASE("fourth power") {
  const std::uint64_t N = 1000;
  const MeanValueResult coef = fourth_power(N);
  const MeanValueResult grid = fourth_power_grid(N);
  CHECK(coef.value > 0.0);
  CHECK(grid.value == doctest::Approx(coef.value).epsilon(1e-10));

  // Quadruple loop over a^2 + b^2 = c^2 + d^2.
  const DampedSum s({2, N, 40.0}, SumKind::von_mangoldt);
  std::vector<std::uint64_t> a;
  std::vector<double> w;
  for (std::uint64_t n = 2; n <= s.params().n_max(); ++n) {
    const double lam = oracle::von_mangoldt(n);
    if (lam > 0) {
      a.push_back(n);
      w.push_back(lam);
    }
  }
  long double ref = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j)
      for (std::size_t k = 0; k < a.size(); ++k)
        for (std::size_t l = 0; l < a.size(); ++l) {
          const std::uint64_t lhs = a[i] * a[i] + a[j] * a[j];
          if (lhs != a[k] * a[k] + a[l] * a[l]) continue;
          ref += static_cast<long double>(w[i] * w[j] * w[k] * w[l]) *
                 std::exp(-static_cast<long double>(2 * lhs) / N);
        }
  CHECK(coef.value == doctest::Approx(static_cast<double>(ref)).epsilon(1e-9));
}

TEST_CASE("gap sweep") {
  const GapSweep g = gap_sweep(2, 100'000, 256);
  const DampedSum h({2, 100'000, 40.0}, SumKind::higher_powers);
  CHECK(g.max_abs == doctest::Approx(h.at_zero()).epsilon(1e-14));
  CHECK(g.argmax == 0.0);
  CHECK(g.envelope == doctest::Approx(std::pow(1e5, 0.25)));
}
