#pragma once

// Sieving and primality services: segmented sieve over [lo, hi], a
// deterministic Miller-Rabin test, and tables of prime powers p^l <= bound.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace waring {

inline constexpr std::uint64_t kDefaultSieveMax = 10'000'000'000ULL;
inline constexpr std::size_t kDefaultSegmentSize = std::size_t{1} << 22;

struct SieveConfig {
  std::uint64_t max_value = kDefaultSieveMax;
  // Work unit of the segmented sieve; rounded up to a multiple of 64.
  std::size_t segment_size = kDefaultSegmentSize;
  // Largest hi - lo + 1 a single PrimeRange may hold (bitset memory guard).
  std::uint64_t max_span = std::uint64_t{1} << 34;
};

// Primality bitset over the closed range [lo, hi].
class PrimeRange {
 public:
  PrimeRange(std::uint64_t lo, std::uint64_t hi, std::vector<std::uint64_t> words);

  std::uint64_t lo() const noexcept { return lo_; }
  std::uint64_t hi() const noexcept { return hi_; }

  // n must lie in [lo, hi].
  bool is_prime(std::uint64_t n) const noexcept {
    const std::uint64_t i = n - lo_;
    return (words_[i >> 6] >> (i & 63)) & 1U;
  }
  bool contains(std::uint64_t n) const noexcept { return n >= lo_ && n <= hi_; }

  std::uint64_t count() const noexcept;
  std::vector<std::uint64_t> primes() const;

 private:
  std::uint64_t lo_;
  std::uint64_t hi_;
  std::vector<std::uint64_t> words_;
};

// Segmented sieve, OpenMP-parallel over segments. Throws DomainError on
// lo < 2 or lo > hi, CapacityError when hi or the span exceeds the config.
PrimeRange sieve_range(std::uint64_t lo, std::uint64_t hi, const SieveConfig& config = {});

// Plain single-pass Eratosthenes over [0, hi]; serial reference for tests.
PrimeRange sieve_range_reference(std::uint64_t lo, std::uint64_t hi,
                                 const SieveConfig& config = {});

// All primes <= bound, ascending (empty for bound < 2).
std::vector<std::uint64_t> primes_up_to(std::uint64_t bound, const SieveConfig& config = {});

// Deterministic for every 64-bit n: strong-pseudoprime test to the first 13
// prime bases, which has no composite passer below 3.3e24.
bool is_prime(std::uint64_t n) noexcept;

// base^exp, or nullopt if the result exceeds 2^64 - 1.
std::optional<std::uint64_t> checked_pow(std::uint64_t base, unsigned exp) noexcept;

// floor(x^(1/k)) for k >= 1.
std::uint64_t integer_root(std::uint64_t x, unsigned k);

struct PowerEntry {
  std::uint64_t prime;
  std::uint64_t power;
  friend bool operator==(const PowerEntry&, const PowerEntry&) = default;
};

class PowerTable {
 public:
  PowerTable(unsigned exponent, std::uint64_t bound, std::vector<PowerEntry> entries)
      : exponent_(exponent), bound_(bound), entries_(std::move(entries)) {}

  unsigned exponent() const noexcept { return exponent_; }
  std::uint64_t bound() const noexcept { return bound_; }
  const std::vector<PowerEntry>& entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }

 private:
  unsigned exponent_;
  std::uint64_t bound_;
  std::vector<PowerEntry> entries_;
};

// Every p^l <= bound with p prime, ascending in p.
PowerTable power_table(unsigned exponent, std::uint64_t bound);

}  // namespace waring
