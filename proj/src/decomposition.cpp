#include "waring/decomposition.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <numbers>
#include <string>

#include "waring/errors.hpp"
#include "waring/phase.hpp"
#include "waring/summation.hpp"

namespace waring {
namespace {

constexpr std::size_t kBlock = 4096;
constexpr std::size_t kTerms = 6;

// E(k) from the conditional estimate of the fourth term.
double e_of_k(unsigned k, double N, double H) {
  const double L = std::log(N);
  switch (k) {
    case 1: return std::pow(N, 1.5) * L + H * std::pow(N, 0.75) * std::pow(L, 1.5);
    case 2: return N * L + H * std::pow(N, 0.25) * L * L;
    case 3:
      return std::pow(N, 5.0 / 6.0) * L + H * std::pow(N, 0.25) * L + std::sqrt(H * N) * L;
    default: return std::pow(N, 0.75 + 1.0 / k) * L;
  }
}

struct Samples {
  std::vector<std::complex<double>> s_k, v_k, s_2, v_2;
};

Samples sample_all(const IntervalSpec& spec, double T, const QuadratureGrid& grid) {
  Samples out;
  const DampedSum s2({2, spec.N, T}, SumKind::von_mangoldt);
  const DampedSum v2({2, spec.N, T}, SumKind::primes);
  out.s_2 = sample_on_grid(s2, grid);
  out.v_2 = sample_on_grid(v2, grid);
  if (spec.k == 2) {
    out.s_k = out.s_2;
    out.v_k = out.v_2;
  } else {
    out.s_k = sample_on_grid(DampedSum({spec.k, spec.N, T}, SumKind::von_mangoldt), grid);
    out.v_k = sample_on_grid(DampedSum({spec.k, spec.N, T}, SumKind::primes), grid);
  }
  return out;
}

std::size_t checked_grid(const IntervalSpec& spec, double T, std::optional<std::size_t> M) {
  const std::size_t need = required_grid_size(spec, T);
  if (!M) return need;
  if (*M < need || !std::has_single_bit(*M)) {
    throw GridError("grid of size " + std::to_string(*M) +
                        " cannot integrate the window integrand exactly",
                    need);
  }
  return *M;
}

// Per-node values: [0] the undivided integrand, [1..6] the six split pieces.
struct NodeTerms {
  std::complex<double> full;
  std::array<std::complex<double>, kTerms> part;
};

struct NodeContext {
  const IntervalSpec& spec;
  const Samples& s;
  double gamma_over_k;  // Gamma(1/k)/k
};

NodeTerms node_terms(const NodeContext& c, const QuadratureGrid& grid, std::size_t j) {
  const double alpha = grid.node(j);
  const std::complex<double> z = ComplexPoint{alpha, c.spec.N}.z();
  const std::complex<double> w =
      u_kernel(-alpha, c.spec.H) * unit_phase(static_cast<double>(c.spec.N), -alpha);
  const std::complex<double> sf = c.gamma_over_k / std::pow(z, 1.0 / c.spec.k);
  const std::complex<double> pi4z = std::numbers::pi / (4.0 * z);
  const std::complex<double> sk = c.s.s_k[j], vk = c.s.v_k[j];
  const std::complex<double> s2 = c.s.s_2[j] * c.s.s_2[j];
  const std::complex<double> v2 = c.s.v_2[j] * c.s.v_2[j];
  NodeTerms t;
  t.full = vk * v2 * w;
  t.part[0] = sf * pi4z * w;
  t.part[1] = sf * (s2 - pi4z) * w;
  t.part[2] = (sk - sf) * s2 * w;
  t.part[3] = vk * (v2 - s2) * w;
  t.part[4] = s2 * (vk - sk) * w;
  t.part[5] = sk * s2 * w;
  return t;
}

struct GridSums {
  std::complex<double> full;
  std::array<std::complex<double>, kTerms> part;
};

GridSums integrate_terms(const IntervalSpec& spec, const Samples& s, const QuadratureGrid& grid,
                         const std::vector<double>* major) {
  const std::size_t M = grid.size();
  const double h = grid.spacing();
  const std::size_t blocks = (M + kBlock - 1) / kBlock;
  std::vector<GridSums> partial(blocks);
  const NodeContext ctx{spec, s, std::tgamma(1.0 / spec.k) / spec.k};
#pragma omp parallel for schedule(static)
  for (std::int64_t b = 0; b < static_cast<std::int64_t>(blocks); ++b) {
    CompensatedComplexSum full;
    std::array<CompensatedComplexSum, kTerms> part;
    const std::size_t lo = static_cast<std::size_t>(b) * kBlock;
    const std::size_t hi = std::min(M, lo + kBlock);
    for (std::size_t j = lo; j < hi; ++j) {
      const NodeTerms t = node_terms(ctx, grid, j);
      full.add(h * t.full);
      const double wmaj = major ? (*major)[j] : h;
      const double wmin = h - wmaj;
      for (std::size_t i = 0; i < 3; ++i) part[i].add(wmaj * t.part[i]);
      part[3].add(h * t.part[3]);
      part[4].add(h * t.part[4]);
      part[5].add((major ? wmin : h) * t.part[5]);
    }
    GridSums& out = partial[static_cast<std::size_t>(b)];
    out.full = full.value();
    for (std::size_t i = 0; i < kTerms; ++i) out.part[i] = part[i].value();
  }
  std::vector<std::complex<double>> col(blocks);
  GridSums total;
  for (std::size_t b = 0; b < blocks; ++b) col[b] = partial[b].full;
  total.full = pairwise_sum(col);
  for (std::size_t i = 0; i < kTerms; ++i) {
    for (std::size_t b = 0; b < blocks; ++b) col[b] = partial[b].part[i];
    total.part[i] = pairwise_sum(col);
  }
  return total;
}

}  // namespace

std::string_view to_string(SplitMode m) noexcept {
  return m == SplitMode::unconditional ? "unconditional" : "conditional";
}

SplitMode parse_split_mode(std::string_view s) {
  if (s == "unconditional") return SplitMode::unconditional;
  if (s == "conditional") return SplitMode::conditional;
  throw ConfigError("unknown split mode '" + std::string(s) +
                    "' (expected unconditional or conditional)");
}

double default_B(std::uint64_t N, double d) {
  if (N < 3) throw DomainError("default_B: N must be >= 3");
  const double L = std::log(static_cast<double>(N));
  return std::exp(d * std::cbrt(L / std::log(L)));
}

double implied_d(std::uint64_t N, double B) {
  if (N < 3) throw DomainError("implied_d: N must be >= 3");
  if (!(B > 1.0)) throw DomainError("implied_d: B must exceed 1");
  const double L = std::log(static_cast<double>(N));
  return std::log(B) / std::cbrt(L / std::log(L));
}

void SplitConfig::validate() const {
  spec.validate();
  if (!(T > 0.0)) throw ConfigError("split: damping cutoff T must be positive");
  if (B < 0.0 || !std::isfinite(B)) throw ConfigError("split: B must be positive");
  if (mode == SplitMode::unconditional) {
    const double xi = effective_B() / static_cast<double>(spec.H);
    if (!(xi > 0.0) || xi > 0.5) {
      throw ConfigError("split: unconditional mode needs 0 < B/H <= 1/2, got B/H = " +
                        std::to_string(xi));
    }
  }
}

std::size_t required_grid_size(const IntervalSpec& spec, double T) {
  spec.validate();
  const std::uint64_t fk = DampedSum({spec.k, spec.N, T}, SumKind::von_mangoldt).max_frequency();
  const std::uint64_t f2 = DampedSum({2, spec.N, T}, SumKind::von_mangoldt).max_frequency();
  const std::uint64_t neg = spec.N + spec.H;
  const std::uint64_t top = fk + 2 * f2;
  const std::uint64_t pos = top > spec.N + 1 ? top - spec.N - 1 : 0;
  return QuadratureGrid::covering(std::max(neg, pos)).size();
}

IdentityResult fundamental_identity(const IntervalSpec& spec, double T,
                                    std::optional<std::size_t> M) {
  const QuadratureGrid grid(checked_grid(spec, T, M));
  const Samples s = sample_all(spec, T, grid);
  const GridSums g = integrate_terms(spec, s, grid, nullptr);
  IdentityResult out;
  out.M = grid.size();
  out.lhs = interval_sum(rep_table(spec), true);
  out.rhs = g.full;
  out.residual = std::abs(out.lhs - out.rhs.real());
  out.relative = out.residual / std::max(std::abs(out.lhs), main_term(spec, true));
  return out;
}

DecompositionReport split_terms(const SplitConfig& config, std::optional<std::size_t> M) {
  config.validate();
  const IntervalSpec& spec = config.spec;
  DecompositionReport rep;
  rep.config = config;
  rep.B = config.effective_B();
  rep.d = spec.N >= 3 && rep.B > 1.0 ? implied_d(spec.N, rep.B) : 0.0;
  const QuadratureGrid grid(checked_grid(spec, config.T, M));
  rep.M = grid.size();

  const Samples s = sample_all(spec, config.T, grid);
  const bool split = config.mode == SplitMode::unconditional;
  std::vector<double> major;
  if (split) major = arc_weights(grid, rep.B / static_cast<double>(spec.H));
  const GridSums g = integrate_terms(spec, s, grid, split ? &major : nullptr);

  const double N = static_cast<double>(spec.N);
  const double H = static_cast<double>(spec.H);
  const double k = spec.k;
  const double L = std::log(N);
  const double Nk = std::pow(N, 1.0 / k);
  const double decay = std::exp(-0.5 * rep.d * std::cbrt(L / std::log(L)));
  rep.main_term_prediction = main_term(spec, true);

  std::array<double, kTerms> bound{};
  std::array<std::string, kTerms> names;
  if (split) {
    names = {"J1", "J2", "J3", "J4", "J5", "J6"};
    bound = {H * H * Nk / N + Nk + std::pow(H / rep.B, 1.0 + 1.0 / k),
             H * Nk * decay,
             H * Nk * decay,
             e_of_k(spec.k, N, H),
             std::pow(N, 0.5 / k) * (std::sqrt(N) + H) * L * L,
             Nk * L * L * (std::sqrt(N) + H / rep.B)};
  } else {
    names = {"I1", "I2", "I3", "I4", "I5", ""};
    bound = {H * H * Nk / N + Nk,
             std::pow(H, 0.5 + 1.0 / k) * std::pow(N, 0.25) * L * L,
             std::sqrt(H) * std::pow(N, 0.5 + 0.5 / k) * L * L,
             e_of_k(spec.k, N, H),
             std::pow(N, 0.5 / k) * (std::sqrt(N) + H) * L * L,
             0.0};
  }
  const std::size_t n_terms = split ? 6 : 5;
  CompensatedComplexSum total;
  for (std::size_t i = 0; i < n_terms; ++i) {
    TermValue t;
    t.name = names[i];
    t.value = g.part[i];
    t.bound = bound[i];
    const double dev = i == 0 ? std::abs(t.value - rep.main_term_prediction) : std::abs(t.value);
    t.fitted_constant = dev / t.bound;
    rep.terms.push_back(t);
    total.add(t.value);
  }
  rep.integral = g.full;
  rep.rhs_total = total.value();
  rep.partition_residual = std::abs(rep.rhs_total - rep.integral) / std::abs(rep.integral);
  rep.lhs = interval_sum(rep_table(spec), true);
  rep.reconstruction_residual =
      std::abs(rep.lhs - rep.rhs_total.real()) / std::max(std::abs(rep.lhs), 1e-300);
  rep.imag_ratio = std::abs(rep.rhs_total.imag()) / std::abs(rep.rhs_total.real());
  return rep;
}

AdaptiveResult major_arc_main_term(const IntervalSpec& spec, double B) {
  spec.validate();
  const double xi = B / static_cast<double>(spec.H);
  if (!(xi > 0.0) || xi > 0.5) throw ConfigError("major_arc_main_term: need 0 < B/H <= 1/2");
  const double k = spec.k;
  const double c = std::numbers::pi * std::tgamma(1.0 / k) / (4.0 * k);
  const auto f = [&](double alpha) {
    const std::complex<double> z = ComplexPoint{alpha, spec.N}.z();
    return c * std::pow(z, -1.0 - 1.0 / k) * u_kernel(-alpha, spec.H) *
           unit_phase(static_cast<double>(spec.N), -alpha);
  };
  AdaptiveOptions opt;
  opt.rel_tol = 1e-9;
  const double cycles = 2.0 * xi * static_cast<double>(spec.N + spec.H);
  opt.initial_pieces = static_cast<std::size_t>(std::clamp(4.0 * cycles, 64.0, 4e6));
  opt.focus = 0.0;
  opt.focus_scale = 0.125 / static_cast<double>(spec.N);
  opt.max_intervals = 8'000'000;
  return integrate_adaptive(f, -xi, xi, opt);
}

Unweighted unweight(const IntervalSpec& spec, double weighted_sum) {
  const double H_over_N = static_cast<double>(spec.H) / static_cast<double>(spec.N);
  return {std::numbers::e * weighted_sum,
          H_over_N * std::numbers::e * std::numbers::e * std::abs(weighted_sum)};
}

}  // namespace waring
