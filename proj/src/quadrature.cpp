#include "waring/quadrature.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <limits>
#include <mutex>
#include <numbers>
#include <queue>
#include <string>

#include <fftw3.h>

#include "waring/errors.hpp"
#include "waring/parallel.hpp"
#include "waring/summation.hpp"

namespace waring {
namespace {

std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

void fftw_threads_once() {
  static std::once_flag flag;
  std::call_once(flag, [] { fftw_init_threads(); });
}

// In-place backward DFT: x_j <- sum_r x_r exp(+2 pi i r j / M).
void backward_fft(std::vector<std::complex<double>>& x) {
  fftw_threads_once();
  auto* data = reinterpret_cast<fftw_complex*>(x.data());
  fftw_plan plan;
  {
    std::lock_guard lock(fftw_planner_mutex());
    fftw_plan_with_nthreads(max_threads());
    plan = fftw_plan_dft_1d(static_cast<int>(x.size()), data, data, FFTW_BACKWARD,
                            FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  {
    std::lock_guard lock(fftw_planner_mutex());
    fftw_destroy_plan(plan);
  }
}

// Gauss-Legendre nodes/weights on [-1, 1] by Newton iteration on P_n.
template <std::size_t Order>
struct GaussLegendre {
  std::array<double, Order> x{};
  std::array<double, Order> w{};

  GaussLegendre() {
    constexpr std::size_t n = Order;
    for (std::size_t i = 0; i < n; ++i) {
      double t = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) /
                          (static_cast<double>(n) + 0.5));
      double dp = 0.0;
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0;
        double p1 = t;
        for (std::size_t k = 2; k <= n; ++k) {
          const double p2 =
              ((2.0 * static_cast<double>(k) - 1.0) * t * p1 - (static_cast<double>(k) - 1.0) * p0) /
              static_cast<double>(k);
          p0 = p1;
          p1 = p2;
        }
        dp = static_cast<double>(n) * (t * p1 - p0) / (t * t - 1.0);
        const double dt = p1 / dp;
        t -= dt;
        if (std::abs(dt) < 1e-16) break;
      }
      x[i] = t;
      w[i] = 2.0 / ((1.0 - t * t) * dp * dp);
    }
  }
};

const GaussLegendre<16>& gl16() {
  static const GaussLegendre<16> rule;
  return rule;
}

struct Panel {
  std::complex<double> value;
  double l1 = 0.0;
};

Panel gauss_panel(const ComplexIntegrand& f, double a, double b) {
  const auto& rule = gl16();
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  std::complex<double> acc{};
  double l1 = 0.0;
  for (std::size_t i = 0; i < rule.x.size(); ++i) {
    const std::complex<double> v = f(mid + half * rule.x[i]);
    acc += rule.w[i] * v;
    l1 += rule.w[i] * std::abs(v);
  }
  return {acc * half, l1 * std::abs(half)};
}

struct Interval {
  double a = 0.0;
  double b = 0.0;
  Panel left;
  Panel right;
  double error = 0.0;

  std::complex<double> value() const { return left.value + right.value; }
  bool operator<(const Interval& o) const { return error < o.error; }
};

Interval refine(const ComplexIntegrand& f, double a, double b, const Panel& whole) {
  Interval iv;
  iv.a = a;
  iv.b = b;
  const double m = 0.5 * (a + b);
  iv.left = gauss_panel(f, a, m);
  iv.right = gauss_panel(f, m, b);
  iv.error = std::abs(whole.value - iv.value());
  return iv;
}

std::vector<double> breakpoints(double a, double b, const AdaptiveOptions& o) {
  std::vector<double> pts;
  const std::size_t pieces = std::max<std::size_t>(1, o.initial_pieces);
  for (std::size_t i = 0; i <= pieces; ++i) {
    pts.push_back(a + (b - a) * static_cast<double>(i) / static_cast<double>(pieces));
  }
  if (o.focus_scale > 0.0 && o.focus >= a && o.focus <= b) {
    pts.push_back(o.focus);
    for (double d = o.focus_scale; d < (b - a); d *= 2.0) {
      if (o.focus - d > a) pts.push_back(o.focus - d);
      if (o.focus + d < b) pts.push_back(o.focus + d);
    }
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  pts.front() = a;
  pts.back() = b;
  return pts;
}

double hat_primitive(double x) {
  x = std::clamp(x, -1.0, 1.0);
  return x <= 0.0 ? 0.5 * (x + 1.0) * (x + 1.0) : 1.0 - 0.5 * (1.0 - x) * (1.0 - x);
}

}  // namespace

QuadratureGrid::QuadratureGrid(std::size_t M) : M_(M) {
  if (M < 2 || !std::has_single_bit(M)) {
    throw DomainError("quadrature grid: M must be a power of two >= 2, got " + std::to_string(M));
  }
}

QuadratureGrid QuadratureGrid::covering(std::uint64_t max_abs_frequency) {
  return QuadratureGrid(std::bit_ceil(std::max<std::uint64_t>(2, max_abs_frequency + 1)));
}

std::complex<double> integrate_period(std::span<const std::complex<double>> samples,
                                      const QuadratureGrid& grid) {
  if (samples.size() != grid.size()) throw DomainError("integrate_period: sample count != M");
  return pairwise_sum(samples) * grid.spacing();
}

double integrate_period(std::span<const double> samples, const QuadratureGrid& grid) {
  if (samples.size() != grid.size()) throw DomainError("integrate_period: sample count != M");
  return pairwise_sum(samples) * grid.spacing();
}

std::vector<std::complex<double>> sample_on_grid(const DampedSum& sum, const QuadratureGrid& grid) {
  const std::size_t M = grid.size();
  std::vector<std::complex<double>> x(M);
  const auto freqs = sum.frequencies();
  const auto coeffs = sum.coefficients();
  // e(m alpha_j) = (-1)^m exp(2 pi i (m mod M) j / M).
  for (std::size_t i = 0; i < freqs.size(); ++i) {
    const double c = (freqs[i] & 1U) ? -coeffs[i] : coeffs[i];
    x[freqs[i] & (M - 1)] += c;
  }
  backward_fft(x);
  return x;
}

std::vector<std::complex<double>> sample_on_grid_direct(const DampedSum& sum,
                                                        const QuadratureGrid& grid) {
  const std::uint64_t M = grid.size();
  const auto freqs = sum.frequencies();
  const auto coeffs = sum.coefficients();
  std::vector<std::complex<double>> out(M);
  for (std::uint64_t j = 0; j < M; ++j) {
    CompensatedComplexSum acc;
    for (std::size_t i = 0; i < freqs.size(); ++i) {
      const std::uint64_t r = ((freqs[i] & (M - 1)) * j) & (M - 1);
      const double t = 2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(M);
      const double c = (freqs[i] & 1U) ? -coeffs[i] : coeffs[i];
      acc.add(c * std::complex<double>(std::cos(t), std::sin(t)));
    }
    out[j] = acc.value();
  }
  return out;
}

std::vector<double> arc_weights(const QuadratureGrid& grid, double xi) {
  if (!(xi > 0.0)) throw DomainError("arc_weights: xi must be positive");
  const std::size_t M = grid.size();
  const double h = grid.spacing();
  std::vector<double> w(M, h);
  if (xi >= 0.5) return w;
  for (std::size_t j = 0; j < M; ++j) {
    double total = 0.0;
    // Node j and its periodic images.
    for (const double shift : {-1.0, 0.0, 1.0}) {
      const double c = grid.node(j) + shift;
      if (c + h <= -xi || c - h >= xi) continue;
      total += hat_primitive((xi - c) / h) - hat_primitive((-xi - c) / h);
    }
    w[j] = h * total;
  }
  return w;
}

AdaptiveResult integrate_adaptive(const ComplexIntegrand& f, double a, double b,
                                  const AdaptiveOptions& options) {
  if (!(b > a)) throw DomainError("integrate_adaptive: need a < b");
  const auto pts = breakpoints(a, b, options);
  const auto n_pieces = static_cast<std::int64_t>(pts.size() - 1);

  std::vector<Interval> initial(static_cast<std::size_t>(n_pieces));
#pragma omp parallel for schedule(dynamic, 16)
  for (std::int64_t i = 0; i < n_pieces; ++i) {
    const double lo = pts[static_cast<std::size_t>(i)];
    const double hi = pts[static_cast<std::size_t>(i) + 1];
    initial[static_cast<std::size_t>(i)] = refine(f, lo, hi, gauss_panel(f, lo, hi));
  }

  AdaptiveResult result;
  result.evaluations = 48 * initial.size();
  std::priority_queue<Interval> heap(std::less<Interval>{}, std::move(initial));

  auto totals = [&heap]() {
    // priority_queue hides its container; copy out for the deterministic sum.
    struct Access : std::priority_queue<Interval> {
      static const std::vector<Interval>& items(const std::priority_queue<Interval>& q) {
        return q.*&Access::c;
      }
    };
    const auto& items = Access::items(heap);
    CompensatedComplexSum value;
    CompensatedSum error;
    CompensatedSum l1;
    for (const Interval& iv : items) {
      value.add(iv.value());
      error.add(iv.error);
      l1.add(iv.left.l1 + iv.right.l1);
    }
    return std::tuple{value.value(), error.value(), l1.value()};
  };

  auto [value, error, l1] = totals();
  constexpr double kRoundoff = 64.0 * std::numeric_limits<double>::epsilon();
  auto tolerance = [&](std::complex<double> v, double mass) {
    return std::max({options.abs_tol, options.rel_tol * std::abs(v), kRoundoff * mass});
  };

  std::size_t since_resum = 0;
  while (error > tolerance(value, l1) && heap.size() < options.max_intervals) {
    const Interval worst = heap.top();
    heap.pop();
    const double m = 0.5 * (worst.a + worst.b);
    Interval lo = refine(f, worst.a, m, worst.left);
    Interval hi = refine(f, m, worst.b, worst.right);
    result.evaluations += 64;
    value += lo.value() + hi.value() - worst.value();
    error += lo.error + hi.error - worst.error;
    heap.push(std::move(lo));
    heap.push(std::move(hi));
    if (++since_resum == 1024) {
      std::tie(value, error, l1) = totals();
      since_resum = 0;
    }
  }
  std::tie(value, error, l1) = totals();
  result.value = value;
  result.error_estimate = error;
  result.intervals = heap.size();
  result.converged = error <= tolerance(value, l1);
  return result;
}

}  // namespace waring
