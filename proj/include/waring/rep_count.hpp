#pragma once

// Exact weighted representation counts
//
//   r_k(n) = sum over ordered prime triples with p1^k + p2^2 + p3^2 = n
//            of log p1 * log p2 * log p3          (natural logarithms)
//
// over a short window n in [N+1, N+H], plus the window aggregates and the
// (pi/4) H N^(1/k) main term they are compared against.

#include <cstdint>
#include <iosfwd>
#include <string_view>
#include <vector>

namespace waring {

// Largest window end N+H accepted for k >= 2 (sieve capacity).
inline constexpr std::uint64_t kMaxWindowEnd = 10'000'000'000ULL;
// For k = 1 every prime below N+H is a candidate p1 and is held in memory.
inline constexpr std::uint64_t kMaxWindowEndLinear = std::uint64_t{1} << 31;
// rep_oracle works by trial division and stops here.
inline constexpr std::uint64_t kOracleMax = 10'000'000ULL;

struct IntervalSpec {
  std::uint64_t N = 2;
  std::uint64_t H = 1;
  unsigned k = 1;

  std::uint64_t first() const noexcept { return N + 1; }
  std::uint64_t last() const noexcept { return N + H; }

  // Throws DomainError for N < 2, H outside [1, N], k < 1 and
  // CapacityError when the window end is beyond the supported range.
  void validate() const;
};

enum class RepMethod { fast, oracle };
std::string_view to_string(RepMethod m) noexcept;

struct RepTable {
  IntervalSpec spec;
  std::vector<double> values;           // r_k(n), index n - N - 1
  std::vector<double> weighted;         // exp(-n/N) r_k(n)
  std::vector<std::uint64_t> counts;    // number of ordered triples
  RepMethod method = RepMethod::fast;

  double value_at(std::uint64_t n) const { return values.at(n - spec.first()); }
};

// Fast enumeration, OpenMP-parallel over n-subranges of the window. Each n is
// accumulated in the same triple order regardless of the partition, so the
// result is bit-identical to rep_table_serial.
RepTable rep_table(const IntervalSpec& spec);
RepTable rep_table_serial(const IntervalSpec& spec);

// Window filled point by point from RepOracle (n <= kOracleMax).
RepTable rep_table_oracle(const IntervalSpec& spec);

// Counts with the two square-prime slots taken unordered: diagonal p2 = p3
// and off-diagonal p2 < p3 kept apart so 2 * offdiag + diag recovers r_k.
struct UnorderedRepTable {
  IntervalSpec spec;
  std::vector<double> offdiag;
  std::vector<double> diag;
  std::vector<std::uint64_t> offdiag_counts;
  std::vector<std::uint64_t> diag_counts;
};
UnorderedRepTable rep_table_unordered(const IntervalSpec& spec);

// Independent brute-force reference: primes by trial division, every ordered
// pair (p2, p3) tried, and the remainder tested for being a prime k-th power.
class RepOracle {
 public:
  // Prepares primes up to n_limit; CapacityError beyond kOracleMax.
  explicit RepOracle(std::uint64_t n_limit);

  double operator()(std::uint64_t n, unsigned k) const;
  std::uint64_t count(std::uint64_t n, unsigned k) const;
  std::uint64_t limit() const noexcept { return limit_; }

 private:
  bool listed_prime(std::uint64_t m) const;

  std::uint64_t limit_;
  std::vector<std::uint64_t> primes_;
};

double rep_oracle(std::uint64_t n, unsigned k);

double interval_sum(const RepTable& table, bool weighted);

// (pi/4) H N^(1/k), or (pi/(4e)) H N^(1/k) when weighted.
double main_term(const IntervalSpec& spec, bool weighted);

// Columns n, r_k, weighted_r_k at 17 significant digits.
void write_rep_csv(std::ostream& out, const RepTable& table);

}  // namespace waring
