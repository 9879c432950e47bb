#include "waring/integrals.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <string>

#include "waring/errors.hpp"
#include "waring/phase.hpp"
#include "waring/summation.hpp"

namespace waring {
namespace {

double log_n(std::uint64_t N) { return std::log(static_cast<double>(N)); }

std::complex<double> z_at(double alpha, std::uint64_t N) {
  return ComplexPoint{alpha, N}.z();
}

}  // namespace

LogLogFit fit_loglog(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw DomainError("fit_loglog: need >= 2 paired points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) throw DomainError("fit_loglog: values must be positive");
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double den = n * sxx - sx * sx;
  if (den == 0.0) throw DomainError("fit_loglog: x values must not all coincide");
  LogLogFit f;
  f.slope = (n * sxy - sx * sy) / den;
  f.intercept = (sy - f.slope * sx) / n;
  return f;
}

LaplaceCheck laplace_check(double mu, std::uint64_t n, std::uint64_t N) {
  if (!(mu > 0.0)) throw DomainError("laplace_check: mu must be positive");
  if (n < 1) throw DomainError("laplace_check: n must be >= 1");
  if (N < 1) throw DomainError("laplace_check: N must be >= 1");
  LaplaceCheck out;
  out.mu = mu;
  out.n = n;
  out.N = N;
  const auto f = [&](double alpha) {
    return std::pow(z_at(alpha, N), -mu) * unit_phase(static_cast<double>(n), -alpha);
  };
  AdaptiveOptions opt;
  opt.rel_tol = 1e-12;
  // The discrepancy under test is O(1/n); resolve it to nine digits.
  opt.abs_tol = 1e-9 / static_cast<double>(n);
  // A few panels per oscillation, and grading into the peak of width 1/N.
  opt.initial_pieces = std::max<std::size_t>(16, 2 * n);
  opt.focus = 0.0;
  opt.focus_scale = 0.125 / static_cast<double>(N);
  const AdaptiveResult r = integrate_adaptive(f, -0.5, 0.5, opt);
  out.lhs = r.value;
  out.quad_error = r.error_estimate;
  out.converged = r.converged;
  const double nd = static_cast<double>(n);
  out.rhs = std::exp(-nd / static_cast<double>(N)) * std::pow(nd, mu - 1.0) / std::tgamma(mu);
  out.err = std::abs(out.lhs - out.rhs);
  return out;
}

std::string_view to_string(MeanIntegrand m) noexcept {
  switch (m) {
    case MeanIntegrand::s_tilde: return "S";
    case MeanIntegrand::v_tilde: return "V";
    case MeanIntegrand::e_tilde: return "E";
  }
  return "?";
}

MeanValueResult mean_square(MeanIntegrand which, unsigned ell, std::uint64_t N, double xi,
                            const MeanSquareOptions& options) {
  if (!(xi > 0.0) || xi > 0.5) throw DomainError("mean_square: xi must lie in (0, 1/2]");
  const DampedSumParams params{ell, N, options.T};
  params.validate();
  const DampedSum sum(params, which == MeanIntegrand::v_tilde ? SumKind::primes
                                                              : SumKind::von_mangoldt);
  MeanValueResult out;
  out.integrand = std::string(to_string(which));
  out.ell = ell;
  out.N = N;
  out.xi = xi;

  const double L = log_n(N);
  const double Nl = std::pow(static_cast<double>(N), 1.0 / ell);
  if (which == MeanIntegrand::e_tilde) {
    out.envelope = Nl * xi * L * L;
    out.alt_envelope = std::pow(static_cast<double>(N), 2.0 / ell - 1.0) *
                       std::exp(-std::cbrt(L / std::log(L)));
  } else {
    out.envelope = xi * Nl * L + (ell <= 2 ? L * L : 1.0);
  }

  // |S|^2 has frequencies in (-F, F): any M > F integrates it exactly.
  const std::uint64_t F = sum.max_frequency();
  std::size_t M = options.grid_override;
  if (M == 0) M = QuadratureGrid::covering(F).size();
  const bool grid_ok = which != MeanIntegrand::e_tilde && M <= options.max_grid;

  if (grid_ok) {
    const QuadratureGrid grid(M);
    const auto samples = sample_on_grid(sum, grid);
    const auto w = arc_weights(grid, xi);
    std::vector<double> terms(M);
#pragma omp parallel for schedule(static)
    for (std::int64_t j = 0; j < static_cast<std::int64_t>(M); ++j) {
      const auto u = static_cast<std::size_t>(j);
      terms[u] = std::norm(samples[u]) * w[u];
    }
    out.value = pairwise_sum(terms);
    out.M = M;
    out.method = (xi >= 0.5 && grid.exact_for(F)) ? "grid-exact" : "grid-masked";
  } else {
    ComplexIntegrand f;
    if (which == MeanIntegrand::e_tilde) {
      f = [&](double a) { return std::complex<double>(std::norm(e_tilde(sum, a)), 0.0); };
    } else {
      f = [&](double a) { return std::complex<double>(std::norm(sum(a)), 0.0); };
    }
    AdaptiveOptions opt;
    opt.rel_tol = options.rel_tol;
    // The integrand varies on the scale 1/F; start with a few panels per cycle
    // and grade into alpha = 0 where the mass concentrates.
    const double cycles = 2.0 * xi * static_cast<double>(F);
    opt.initial_pieces = static_cast<std::size_t>(std::clamp(cycles / 4.0, 16.0, 2e5));
    opt.focus = 0.0;
    opt.focus_scale = 0.125 / static_cast<double>(N);
    opt.max_intervals = 2'000'000;
    const AdaptiveResult r = integrate_adaptive(f, -xi, xi, opt);
    out.value = r.value.real();
    out.quad_error = r.error_estimate;
    out.method = "adaptive";
  }
  out.fitted_constant = out.value / out.envelope;
  return out;
}

MeanValueResult fourth_power(std::uint64_t N, double T) {
  const DampedSum sum({2, N, T}, SumKind::von_mangoldt);
  const auto freqs = sum.frequencies();
  const auto coeffs = sum.coefficients();
  struct Pair {
    std::uint64_t s;
    double w;
  };
  std::vector<Pair> pairs;
  pairs.reserve(freqs.size() * freqs.size());
  for (std::size_t i = 0; i < freqs.size(); ++i) {
    for (std::size_t j = 0; j < freqs.size(); ++j) {
      pairs.push_back({freqs[i] + freqs[j], coeffs[i] * coeffs[j]});
    }
  }
  std::sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) {
    return a.s != b.s ? a.s < b.s : a.w < b.w;
  });
  CompensatedSum total;
  for (std::size_t i = 0; i < pairs.size();) {
    CompensatedSum group;
    std::size_t j = i;
    for (; j < pairs.size() && pairs[j].s == pairs[i].s; ++j) group.add(pairs[j].w);
    const double g = group.value();
    total.add(g * g);
    i = j;
  }
  MeanValueResult out;
  out.integrand = "S^4";
  out.N = N;
  out.method = "coefficients";
  out.value = total.value();
  const double L = log_n(N);
  out.envelope = static_cast<double>(N) * L * L;
  out.fitted_constant = out.value / out.envelope;
  return out;
}

MeanValueResult fourth_power_grid(std::uint64_t N, double T) {
  const DampedSum sum({2, N, T}, SumKind::von_mangoldt);
  // S^2 has frequencies up to 2F; |S^2|^2 then needs M > 2F.
  const QuadratureGrid grid = QuadratureGrid::covering(2 * sum.max_frequency());
  const auto samples = sample_on_grid(sum, grid);
  std::vector<double> q(grid.size());
  for (std::size_t j = 0; j < q.size(); ++j) {
    const double a = std::norm(samples[j]);
    q[j] = a * a;
  }
  MeanValueResult out;
  out.integrand = "S^4";
  out.N = N;
  out.M = grid.size();
  out.method = "grid-exact";
  out.value = integrate_period(q, grid);
  const double L = log_n(N);
  out.envelope = static_cast<double>(N) * L * L;
  out.fitted_constant = out.value / out.envelope;
  return out;
}

GapSweep gap_sweep(unsigned ell, std::uint64_t N, std::size_t samples, double T) {
  if (samples < 1) throw DomainError("gap_sweep: need at least one sample");
  const DampedSum gap({ell, N, T}, SumKind::higher_powers);
  GapSweep out;
  out.ell = ell;
  out.N = N;
  out.samples = samples;
  for (std::size_t j = 0; j < samples; ++j) {
    const double a = static_cast<double>(j) / static_cast<double>(samples) - 0.5;
    const double v = std::abs(gap(a));
    if (v > out.max_abs) {
      out.max_abs = v;
      out.argmax = a;
    }
  }
  out.envelope = std::pow(static_cast<double>(N), 1.0 / (2.0 * ell));
  out.fitted_constant = out.max_abs / out.envelope;
  return out;
}

}  // namespace waring
