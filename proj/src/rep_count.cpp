#include "waring/rep_count.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <string>

#include "waring/errors.hpp"
#include "waring/parallel.hpp"
#include "waring/prime_tools.hpp"
#include "waring/summation.hpp"

namespace waring {
namespace {

// Immutable prime data shared by every window chunk.
class TripleEnumerator {
 public:
  explicit TripleEnumerator(const IntervalSpec& spec) : k_(spec.k) {
    const std::uint64_t last = spec.last();
    const std::uint64_t root2 = integer_root(last, 2);
    const std::uint64_t bound = k_ == 1 ? last : std::max(root2, integer_root(last, k_));
    const auto primes = primes_up_to(bound);
    for (const std::uint64_t p : primes) {
      if (p <= root2) {
        squares_.push_back(p * p);
        square_logs_.push_back(std::log(static_cast<double>(p)));
      }
      if (k_ == 1) {
        linear_.push_back(static_cast<std::uint32_t>(p));
      } else if (const auto q = checked_pow(p, k_); q && *q <= last) {
        kpowers_.push_back(*q);
        kpower_logs_.push_back(std::log(static_cast<double>(p)));
      }
    }
  }

  // Calls visit(n, weight, i2, i3) for every triple with n in [a, b]; i2, i3
  // index the square-prime slots. Triples come in a fixed order.
  template <typename Visit>
  void run(std::uint64_t a, std::uint64_t b, bool unordered, Visit&& visit) const {
    if (k_ == 1) {
      run_linear(a, b, unordered, visit);
    } else {
      run_power(a, b, unordered, visit);
    }
  }

 private:
  template <typename Visit>
  void run_power(std::uint64_t a, std::uint64_t b, bool unordered, Visit& visit) const {
    for (std::size_t i1 = 0; i1 < kpowers_.size(); ++i1) {
      const std::uint64_t q1 = kpowers_[i1];
      if (q1 + 8 > b) break;
      for (std::size_t i2 = 0; i2 < squares_.size(); ++i2) {
        const std::uint64_t s = q1 + squares_[i2];
        if (s + 4 > b) break;
        const double w12 = kpower_logs_[i1] * square_logs_[i2];
        const std::uint64_t need = a > s ? a - s : 0;
        auto it = std::lower_bound(squares_.begin(), squares_.end(), need);
        std::size_t i3 = static_cast<std::size_t>(it - squares_.begin());
        if (unordered) i3 = std::max(i3, i2);
        for (; i3 < squares_.size(); ++i3) {
          const std::uint64_t n = s + squares_[i3];
          if (n > b) break;
          visit(n, w12 * square_logs_[i3], i2, i3);
        }
      }
    }
  }

  template <typename Visit>
  void run_linear(std::uint64_t a, std::uint64_t b, bool unordered, Visit& visit) const {
    for (std::size_t i2 = 0; i2 < squares_.size(); ++i2) {
      if (squares_[i2] + 6 > b) break;
      for (std::size_t i3 = unordered ? i2 : 0; i3 < squares_.size(); ++i3) {
        const std::uint64_t s = squares_[i2] + squares_[i3];
        if (s + 2 > b) break;
        const std::uint64_t need = a > s ? a - s : 0;
        auto it = std::lower_bound(linear_.begin(), linear_.end(), need);
        for (; it != linear_.end(); ++it) {
          const std::uint64_t n = s + *it;
          if (n > b) break;
          const double w = std::log(static_cast<double>(*it)) * square_logs_[i2];
          visit(n, w * square_logs_[i3], i2, i3);
        }
      }
    }
  }

  unsigned k_;
  std::vector<std::uint64_t> squares_;
  std::vector<double> square_logs_;
  std::vector<std::uint64_t> kpowers_;
  std::vector<double> kpower_logs_;
  std::vector<std::uint32_t> linear_;
};

RepTable empty_table(const IntervalSpec& spec, RepMethod method) {
  RepTable t;
  t.spec = spec;
  t.method = method;
  t.values.assign(spec.H, 0.0);
  t.weighted.assign(spec.H, 0.0);
  t.counts.assign(spec.H, 0);
  return t;
}

void fill_weighted(RepTable& t) {
  const double N = static_cast<double>(t.spec.N);
  for (std::uint64_t i = 0; i < t.spec.H; ++i) {
    const double n = static_cast<double>(t.spec.first() + i);
    t.weighted[i] = std::exp(-n / N) * t.values[i];
  }
}

void fill_chunk(const TripleEnumerator& en, std::uint64_t a, std::uint64_t b, RepTable& t) {
  std::vector<CompensatedSum> acc(b - a + 1);
  const std::uint64_t base = t.spec.first();
  en.run(a, b, false, [&](std::uint64_t n, double w, std::size_t, std::size_t) {
    acc[n - a].add(w);
    ++t.counts[n - base];
  });
  for (std::uint64_t n = a; n <= b; ++n) t.values[n - base] = acc[n - a].value();
}

RepTable build(const IntervalSpec& spec, int chunks_hint) {
  spec.validate();
  const TripleEnumerator en(spec);
  RepTable t = empty_table(spec, RepMethod::fast);
  const auto n_chunks =
      static_cast<std::int64_t>(std::clamp<std::uint64_t>(chunks_hint, 1, spec.H));
  const std::uint64_t width = (spec.H + n_chunks - 1) / n_chunks;

#pragma omp parallel for schedule(dynamic) if (n_chunks > 1)
  for (std::int64_t c = 0; c < n_chunks; ++c) {
    const std::uint64_t a = spec.first() + static_cast<std::uint64_t>(c) * width;
    if (a > spec.last()) continue;
    const std::uint64_t b = std::min(spec.last(), a + width - 1);
    fill_chunk(en, a, b, t);
  }
  fill_weighted(t);
  return t;
}

}  // namespace

void IntervalSpec::validate() const {
  if (N < 2) throw DomainError("interval: N must be >= 2, got " + std::to_string(N));
  if (H < 1 || H > N) {
    throw DomainError("interval: H must satisfy 1 <= H <= N, got H=" + std::to_string(H));
  }
  if (k < 1) throw DomainError("interval: k must be >= 1");
  const std::uint64_t cap = k == 1 ? kMaxWindowEndLinear : kMaxWindowEnd;
  if (N > cap || N + H > cap) {
    throw CapacityError("interval: window end " + std::to_string(N + H) +
                        " exceeds supported maximum " + std::to_string(cap));
  }
}

std::string_view to_string(RepMethod m) noexcept {
  return m == RepMethod::fast ? "fast" : "oracle";
}

RepTable rep_table(const IntervalSpec& spec) { return build(spec, 4 * max_threads()); }

RepTable rep_table_serial(const IntervalSpec& spec) { return build(spec, 1); }

RepTable rep_table_oracle(const IntervalSpec& spec) {
  spec.validate();
  const RepOracle oracle(spec.last());
  RepTable t = empty_table(spec, RepMethod::oracle);
  for (std::uint64_t i = 0; i < spec.H; ++i) {
    t.values[i] = oracle(spec.first() + i, spec.k);
    t.counts[i] = oracle.count(spec.first() + i, spec.k);
  }
  fill_weighted(t);
  return t;
}

UnorderedRepTable rep_table_unordered(const IntervalSpec& spec) {
  spec.validate();
  const TripleEnumerator en(spec);
  UnorderedRepTable t;
  t.spec = spec;
  std::vector<CompensatedSum> off(spec.H);
  std::vector<CompensatedSum> diag(spec.H);
  t.offdiag_counts.assign(spec.H, 0);
  t.diag_counts.assign(spec.H, 0);
  en.run(spec.first(), spec.last(), true,
         [&](std::uint64_t n, double w, std::size_t i2, std::size_t i3) {
           const std::uint64_t i = n - spec.first();
           if (i2 == i3) {
             diag[i].add(w);
             ++t.diag_counts[i];
           } else {
             off[i].add(w);
             ++t.offdiag_counts[i];
           }
         });
  for (std::uint64_t i = 0; i < spec.H; ++i) {
    t.offdiag.push_back(off[i].value());
    t.diag.push_back(diag[i].value());
  }
  return t;
}

RepOracle::RepOracle(std::uint64_t n_limit) : limit_(n_limit) {
  if (n_limit > kOracleMax) {
    throw CapacityError("rep_oracle: n=" + std::to_string(n_limit) + " exceeds " +
                        std::to_string(kOracleMax));
  }
  for (std::uint64_t c = 2; c <= n_limit; ++c) {
    bool prime = true;
    for (const std::uint64_t p : primes_) {
      if (p * p > c) break;
      if (c % p == 0) {
        prime = false;
        break;
      }
    }
    if (prime) primes_.push_back(c);
  }
}

bool RepOracle::listed_prime(std::uint64_t m) const {
  return std::binary_search(primes_.begin(), primes_.end(), m);
}

namespace {

// Exact k-th root of m if m is a perfect k-th power.
std::uint64_t exact_root(std::uint64_t m, unsigned k) {
  const auto guess = static_cast<std::uint64_t>(
      std::llround(std::pow(static_cast<double>(m), 1.0 / static_cast<double>(k))));
  for (std::uint64_t c = guess > 0 ? guess - 1 : 0; c <= guess + 1; ++c) {
    std::uint64_t p = 1;
    for (unsigned i = 0; i < k && p <= m; ++i) p *= c;
    if (p == m) return c;
  }
  return 0;
}

template <typename Visit>
void oracle_walk(const std::vector<std::uint64_t>& primes, std::uint64_t n, unsigned k,
                 const auto& is_listed, Visit&& visit) {
  for (const std::uint64_t p2 : primes) {
    const std::uint64_t q2 = p2 * p2;
    if (q2 >= n) break;
    for (const std::uint64_t p3 : primes) {
      const std::uint64_t q3 = p3 * p3;
      if (q2 + q3 >= n) break;
      const std::uint64_t p1 = exact_root(n - q2 - q3, k);
      if (p1 >= 2 && is_listed(p1)) visit(p1, p2, p3);
    }
  }
}

}  // namespace

double RepOracle::operator()(std::uint64_t n, unsigned k) const {
  if (k < 1) throw DomainError("rep_oracle: k must be >= 1");
  if (n > limit_) throw CapacityError("rep_oracle: n beyond prepared limit");
  CompensatedSum acc;
  oracle_walk(primes_, n, k, [this](std::uint64_t m) { return listed_prime(m); },
              [&](std::uint64_t p1, std::uint64_t p2, std::uint64_t p3) {
                acc.add(std::log(static_cast<double>(p1)) * std::log(static_cast<double>(p2)) *
                        std::log(static_cast<double>(p3)));
              });
  return acc.value();
}

std::uint64_t RepOracle::count(std::uint64_t n, unsigned k) const {
  if (k < 1) throw DomainError("rep_oracle: k must be >= 1");
  if (n > limit_) throw CapacityError("rep_oracle: n beyond prepared limit");
  std::uint64_t total = 0;
  oracle_walk(primes_, n, k, [this](std::uint64_t m) { return listed_prime(m); },
              [&](std::uint64_t, std::uint64_t, std::uint64_t) { ++total; });
  return total;
}

double rep_oracle(std::uint64_t n, unsigned k) { return RepOracle(n)(n, k); }

double interval_sum(const RepTable& table, bool weighted) {
  CompensatedSum acc;
  for (const double v : weighted ? table.weighted : table.values) acc.add(v);
  return acc.value();
}

double main_term(const IntervalSpec& spec, bool weighted) {
  const double base = std::numbers::pi / 4.0 * static_cast<double>(spec.H) *
                      std::pow(static_cast<double>(spec.N), 1.0 / spec.k);
  return weighted ? base / std::numbers::e : base;
}

void write_rep_csv(std::ostream& out, const RepTable& table) {
  out << "n,r_k,weighted_r_k\n";
  char line[96];
  for (std::uint64_t i = 0; i < table.spec.H; ++i) {
    std::snprintf(line, sizeof line, "%llu,%.17g,%.17g\n",
                  static_cast<unsigned long long>(table.spec.first() + i), table.values[i],
                  table.weighted[i]);
    out << line;
  }
}

}  // namespace waring
