#include "waring/explicit_formula.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <string_view>
#include <system_error>

#include "waring/complex_gamma.hpp"
#include "waring/errors.hpp"
#include "waring/summation.hpp"

namespace waring {
namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// z^(-rho/l) Gamma(rho/l) in log space: Gamma(rho/l) alone underflows for
// large gamma while the product may not.
std::complex<double> log_zero_term(std::complex<double> rho, unsigned ell,
                                   std::complex<double> log_z) {
  const std::complex<double> s = rho / static_cast<double>(ell);
  return -s * log_z + log_gamma(s);
}

}  // namespace

ZeroTable parse_zeros(std::istream& in, std::string source) {
  ZeroTable table;
  table.source = std::move(source);
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(line.data(), line.data() + line.size(), value);
    if (ec != std::errc{} || ptr != line.data() + line.size() || !std::isfinite(value)) {
      throw ParseError("zeros: not a decimal number: '" + std::string(line) + "'", line_no);
    }
    if (value <= 0.0) throw ParseError("zeros: ordinate must be positive", line_no);
    if (!table.gammas.empty() && value <= table.gammas.back()) {
      throw ParseError("zeros: ordinates must be strictly ascending", line_no);
    }
    const std::size_t idx = table.gammas.size();
    if (idx < std::size(kFirstZeroOrdinates) &&
        std::abs(value - kFirstZeroOrdinates[idx]) > kZeroValidationTol) {
      throw ParseError("zeros: entry " + std::to_string(idx + 1) +
                           " disagrees with the reference ordinate " +
                           std::to_string(kFirstZeroOrdinates[idx]),
                       line_no);
    }
    table.gammas.push_back(value);
  }
  return table;
}

ZeroTable load_zeros(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::filesystem::filesystem_error(
        "cannot open zeros file", path, std::make_error_code(std::errc::no_such_file_or_directory));
  }
  return parse_zeros(in, path.string());
}

ZeroSum zero_sum(const ZeroTable& table, unsigned ell, const ComplexPoint& point,
                 std::size_t k_used) {
  if (ell < 1) throw DomainError("zero_sum: l must be >= 1");
  if (k_used > table.size()) {
    throw DomainError("zero_sum: K_used=" + std::to_string(k_used) + " exceeds table size " +
                      std::to_string(table.size()));
  }
  ZeroSum out;
  out.used = k_used;
  const std::complex<double> log_z = std::log(point.z());
  CompensatedComplexSum acc;
  for (std::size_t i = 0; i < k_used; ++i) {
    // rho and its conjugate are separate terms: for alpha != 0 they are not
    // conjugates of each other, only the full sum is real-symmetric.
    for (const double sign : {1.0, -1.0}) {
      const std::complex<double> rho{0.5, sign * table.gammas[i]};
      const std::complex<double> lt = log_zero_term(rho, ell, log_z);
      if (lt.real() < kZeroTermFloor) {
        ++out.skipped;
        continue;
      }
      acc.add(std::exp(lt));
    }
  }
  out.value = acc.value() / static_cast<double>(ell);
  return out;
}

ExplicitApprox explicit_residual(const ZeroTable& table, const DampedSum& sum, double alpha,
                                 std::size_t k_used) {
  if (sum.kind() != SumKind::von_mangoldt) {
    throw DomainError("explicit_residual: requires the von Mangoldt sum");
  }
  ExplicitApprox out;
  out.ell = sum.params().ell;
  out.N = sum.params().N;
  out.alpha = alpha;
  out.k_used = k_used;
  const ComplexPoint point{alpha, out.N};
  out.main = singular_factor(out.ell, point);
  const ZeroSum zs = zero_sum(table, out.ell, point, k_used);
  out.zero_sum = zs.value;
  out.skipped = zs.skipped;
  out.s_value = sum(alpha);
  out.residual = out.s_value - out.main + out.zero_sum;
  return out;
}

ExplicitApprox explicit_residual(const ZeroTable& table, unsigned ell, std::uint64_t N,
                                 double alpha, std::size_t k_used, double T) {
  const DampedSum sum({ell, N, T}, SumKind::von_mangoldt);
  return explicit_residual(table, sum, alpha, k_used);
}

}  // namespace waring
