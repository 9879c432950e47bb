#include "waring/prime_tools.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <string>

#include "waring/errors.hpp"

namespace waring {
namespace {

void check_range(std::uint64_t lo, std::uint64_t hi, const SieveConfig& config) {
  if (lo < 2 || lo > hi) {
    throw DomainError("sieve_range: need 2 <= lo <= hi, got lo=" + std::to_string(lo) +
                      " hi=" + std::to_string(hi));
  }
  if (hi > config.max_value) {
    throw CapacityError("sieve_range: hi=" + std::to_string(hi) + " exceeds maximum " +
                        std::to_string(config.max_value));
  }
  if (hi - lo >= config.max_span) {
    throw CapacityError("sieve_range: span " + std::to_string(hi - lo + 1) +
                        " exceeds maximum " + std::to_string(config.max_span));
  }
}

// Simple sieve for the base primes up to limit (limit <= 1e5 for hi <= 1e10).
std::vector<std::uint32_t> base_primes(std::uint64_t limit) {
  std::vector<std::uint32_t> out;
  if (limit < 2) return out;
  std::vector<bool> composite(limit + 1, false);
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    out.push_back(static_cast<std::uint32_t>(i));
    for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
  }
  return out;
}

std::uint64_t isqrt(std::uint64_t x) { return integer_root(x, 2); }

// Clears composite bits for integers in [seg_lo, seg_hi]; bit i <-> lo + i.
void sieve_segment(std::uint64_t lo, std::uint64_t seg_lo, std::uint64_t seg_hi,
                   const std::vector<std::uint32_t>& base, std::vector<std::uint64_t>& words) {
  for (const std::uint32_t p32 : base) {
    const std::uint64_t p = p32;
    if (p * p > seg_hi) break;
    std::uint64_t start = std::max(p * p, (seg_lo + p - 1) / p * p);
    for (std::uint64_t m = start; m <= seg_hi; m += p) {
      const std::uint64_t i = m - lo;
      words[i >> 6] &= ~(std::uint64_t{1} << (i & 63));
    }
  }
}

std::vector<std::uint64_t> all_ones(std::uint64_t lo, std::uint64_t hi) {
  const std::uint64_t bits = hi - lo + 1;
  std::vector<std::uint64_t> words((bits + 63) / 64, ~std::uint64_t{0});
  if (bits % 64 != 0) words.back() = (std::uint64_t{1} << (bits % 64)) - 1;
  return words;
}

__extension__ typedef unsigned __int128 u128;

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) noexcept {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) noexcept {
  std::uint64_t result = 1;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

bool strong_probable_prime(std::uint64_t n, std::uint64_t a, std::uint64_t d, unsigned s) noexcept {
  std::uint64_t x = pow_mod(a, d, n);
  if (x == 1 || x == n - 1) return true;
  for (unsigned r = 1; r < s; ++r) {
    x = mul_mod(x, x, n);
    if (x == n - 1) return true;
  }
  return false;
}

constexpr std::array<std::uint64_t, 13> kWitnesses = {2,  3,  5,  7,  11, 13, 17,
                                                      19, 23, 29, 31, 37, 41};

}  // namespace

PrimeRange::PrimeRange(std::uint64_t lo, std::uint64_t hi, std::vector<std::uint64_t> words)
    : lo_(lo), hi_(hi), words_(std::move(words)) {}

std::uint64_t PrimeRange::count() const noexcept {
  std::uint64_t total = 0;
  for (const std::uint64_t w : words_) total += static_cast<std::uint64_t>(std::popcount(w));
  return total;
}

std::vector<std::uint64_t> PrimeRange::primes() const {
  std::vector<std::uint64_t> out;
  out.reserve(count());
  for (std::size_t w = 0; w < words_.size(); ++w) {
    std::uint64_t bits = words_[w];
    while (bits != 0) {
      const int b = std::countr_zero(bits);
      out.push_back(lo_ + w * 64 + static_cast<std::uint64_t>(b));
      bits &= bits - 1;
    }
  }
  return out;
}

PrimeRange sieve_range(std::uint64_t lo, std::uint64_t hi, const SieveConfig& config) {
  check_range(lo, hi, config);
  const auto base = base_primes(isqrt(hi));
  auto words = all_ones(lo, hi);

  const std::uint64_t seg = std::max<std::uint64_t>(64, (config.segment_size + 63) / 64 * 64);
  const std::uint64_t span = hi - lo + 1;
  const auto n_segments = static_cast<std::int64_t>((span + seg - 1) / seg);

  // Segments start at bit offsets that are multiples of 64, so no two
  // segments touch the same word.
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t s = 0; s < n_segments; ++s) {
    const std::uint64_t seg_lo = lo + static_cast<std::uint64_t>(s) * seg;
    const std::uint64_t seg_hi = std::min(hi, seg_lo + seg - 1);
    sieve_segment(lo, seg_lo, seg_hi, base, words);
  }
  return PrimeRange(lo, hi, std::move(words));
}

PrimeRange sieve_range_reference(std::uint64_t lo, std::uint64_t hi, const SieveConfig& config) {
  check_range(lo, hi, config);
  std::vector<bool> composite(hi + 1, false);
  for (std::uint64_t i = 2; i * i <= hi; ++i) {
    if (composite[i]) continue;
    for (std::uint64_t j = i * i; j <= hi; j += i) composite[j] = true;
  }
  auto words = all_ones(lo, hi);
  for (std::uint64_t n = lo; n <= hi; ++n) {
    if (composite[n]) {
      const std::uint64_t i = n - lo;
      words[i >> 6] &= ~(std::uint64_t{1} << (i & 63));
    }
  }
  return PrimeRange(lo, hi, std::move(words));
}

std::vector<std::uint64_t> primes_up_to(std::uint64_t bound, const SieveConfig& config) {
  if (bound < 2) return {};
  return sieve_range(2, bound, config).primes();
}

bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  for (const std::uint64_t p : kWitnesses) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  if (n < 41 * 41) return true;
  std::uint64_t d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (const std::uint64_t a : kWitnesses) {
    if (!strong_probable_prime(n, a, d, s)) return false;
  }
  return true;
}

std::optional<std::uint64_t> checked_pow(std::uint64_t base, unsigned exp) noexcept {
  std::uint64_t result = 1;
  for (unsigned i = 0; i < exp; ++i) {
    if (base != 0 && result > UINT64_MAX / base) return std::nullopt;
    result *= base;
  }
  return result;
}

std::uint64_t integer_root(std::uint64_t x, unsigned k) {
  if (k == 0) throw DomainError("integer_root: k must be >= 1");
  if (k == 1 || x < 2) return x;
  auto r = static_cast<std::uint64_t>(std::pow(static_cast<long double>(x), 1.0L / k));
  auto fits = [&](std::uint64_t c) {
    const auto p = checked_pow(c, k);
    return p.has_value() && *p <= x;
  };
  while (r > 0 && !fits(r)) --r;
  while (fits(r + 1)) ++r;
  return r;
}

PowerTable power_table(unsigned exponent, std::uint64_t bound) {
  if (exponent == 0) throw DomainError("power_table: exponent must be >= 1");
  if (bound < 4) throw DomainError("power_table: bound must be >= 4");
  const std::uint64_t root = integer_root(bound, exponent);
  std::vector<PowerEntry> entries;
  for (const std::uint64_t p : primes_up_to(root)) {
    entries.push_back({p, *checked_pow(p, exponent)});
  }
  return PowerTable(exponent, bound, std::move(entries));
}

}  // namespace waring
