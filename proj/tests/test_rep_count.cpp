#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "oracles.hpp"
#include "waring/errors.hpp"
#include "waring/rep_count.hpp"

using namespace waring;

namespace {

// Every ordered triple with entries <= n, checked one by one.
double triple_loop(std::uint64_t n, unsigned k) {
  const auto primes = oracle::trial_primes(n);
  double total = 0.0;
  for (std::uint64_t p1 : primes) {
    double pk = 1.0;
    for (unsigned i = 0; i < k; ++i) pk *= static_cast<double>(p1);
    if (pk > static_cast<double>(n)) break;
    for (std::uint64_t p2 : primes) {
      for (std::uint64_t p3 : primes) {
        if (static_cast<std::uint64_t>(pk) + p2 * p2 + p3 * p3 == n) {
          total += std::log(static_cast<double>(p1)) * std::log(static_cast<double>(p2)) *
                   std::log(static_cast<double>(p3));
        }
      }
    }
  }
  return total;
}

}  // namespace

TEST_CASE("hand-checked small values") {
  const double l2 = std::numbers::ln2;
  const double l3 = std::log(3.0);
  CHECK(rep_oracle(10, 1) == doctest::Approx(l2 * l2 * l2).epsilon(1e-15));
  CHECK(rep_oracle(12, 2) == doctest::Approx(l2 * l2 * l2).epsilon(1e-15));
  CHECK(rep_oracle(17, 2) == doctest::Approx(3 * l2 * l2 * l3).epsilon(1e-15));
  CHECK(rep_oracle(13, 2) == 0.0);
  CHECK(rep_oracle(4, 5) == 0.0);

  const RepTable t1 = rep_table({9, 1, 1});
  CHECK(t1.value_at(10) == doctest::Approx(0.333025).epsilon(1e-6));
  const RepTable t2 = rep_table({11, 8, 2});
  CHECK(t2.value_at(12) == doctest::Approx(l2 * l2 * l2).epsilon(1e-15));
  CHECK(t2.value_at(13) == 0.0);
  CHECK(t2.value_at(17) == doctest::Approx(3 * l2 * l2 * l3).epsilon(1e-15));
}

TEST_CASE("oracle agrees with the triple loop") {
  for (unsigned k = 1; k <= 4; ++k) {
    for (std::uint64_t n = 2; n <= 400; ++n) {
      REQUIRE(rep_oracle(n, k) == doctest::Approx(triple_loop(n, k)).epsilon(1e-12));
    }
  }
}

TEST_CASE("first nonzero value at 2^k + 8") {
  for (unsigned k = 1; k <= 5; ++k) {
    const std::uint64_t first = (std::uint64_t{1} << k) + 8;
    const RepTable t = rep_table({first - 5 > 2 ? first - 5 : 2, 5, k});
    for (std::uint64_t n = t.spec.first(); n < first; ++n) CHECK(t.value_at(n) == 0.0);
    CHECK(t.value_at(first) > 0.0);
  }
}

TEST_CASE("fast path equals oracle on windows") {
  for (unsigned k = 1; k <= 4; ++k) {
    for (std::uint64_t N : {50ULL, 1000ULL, 20'000ULL}) {
      const IntervalSpec spec{N, std::min<std::uint64_t>(N, 300), k};
      const RepTable fast = rep_table(spec);
      const RepTable slow = rep_table_oracle(spec);
      CHECK(slow.method == RepMethod::oracle);
      for (std::size_t i = 0; i < fast.values.size(); ++i) {
        REQUIRE(fast.values[i] == doctest::Approx(slow.values[i]).epsilon(1e-12));
        REQUIRE(fast.counts[i] == slow.counts[i]);
      }
    }
  }
}

TEST_CASE("parallel and serial tables are bit-identical") {
  for (unsigned k = 1; k <= 3; ++k) {
    const IntervalSpec spec{200'000, 5'000, k};
    const RepTable a = rep_table(spec);
    const RepTable b = rep_table_serial(spec);
    CHECK(a.values == b.values);
    CHECK(a.weighted == b.weighted);
    CHECK(a.counts == b.counts);
  }
}

TEST_CASE("unordered counts reproduce ordered counts") {
  for (unsigned k = 1; k <= 3; ++k) {
    const IntervalSpec spec{30'000, 2'000, k};
    const RepTable ordered = rep_table(spec);
    const UnorderedRepTable u = rep_table_unordered(spec);
    for (std::size_t i = 0; i < ordered.values.size(); ++i) {
      REQUIRE(2 * u.offdiag_counts[i] + u.diag_counts[i] == ordered.counts[i]);
      REQUIRE(2.0 * u.offdiag[i] + u.diag[i] ==
              doctest::Approx(ordered.values[i]).epsilon(1e-13));
    }
  }
}

TEST_CASE("interval sums and main term") {
  const IntervalSpec spec{100, 10, 2};
  const RepTable t = rep_table(spec);
  double by_oracle = 0.0;
  for (std::uint64_t n = 101; n <= 110; ++n) by_oracle += rep_oracle(n, 2);
  CHECK(interval_sum(t, false) == doctest::Approx(by_oracle).epsilon(1e-13));

  const double plain = interval_sum(t, false);
  const double weighted = interval_sum(t, true);
  CHECK(weighted >= std::exp(-110.0 / 100.0) * plain * (1 - 1e-14));
  CHECK(weighted <= std::exp(-101.0 / 100.0) * plain * (1 + 1e-14));

  RepTable zero = t;
  std::fill(zero.values.begin(), zero.values.end(), 0.0);
  std::fill(zero.weighted.begin(), zero.weighted.end(), 0.0);
  CHECK(interval_sum(zero, false) == 0.0);
  CHECK(interval_sum(zero, true) == 0.0);

  CHECK(main_term({10'000, 100, 2}, false) == doctest::Approx(2500 * std::numbers::pi));
  CHECK(main_term({16, 4, 2}, false) == doctest::Approx(4 * std::numbers::pi));
  CHECK(main_term({10'000, 100, 3}, true) / main_term({10'000, 100, 3}, false) ==
        doctest::Approx(std::exp(-1.0)));
}

TEST_CASE("csv output") {
  const RepTable t = rep_table({11, 2, 2});
  std::ostringstream out;
  write_rep_csv(out, t);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "n,r_k,weighted_r_k");
  std::getline(in, line);
  CHECK(line.rfind("12,", 0) == 0);
  const double v = std::stod(line.substr(3, line.find(',', 3) - 3));
  CHECK(v == t.value_at(12));  // 17 significant digits round-trip
}

TEST_CASE("interval validation") {
  CHECK_THROWS_AS(rep_table({1, 1, 2}), DomainError);
  CHECK_THROWS_AS(rep_table({100, 0, 2}), DomainError);
  CHECK_THROWS_AS(rep_table({100, 101, 2}), DomainError);
  CHECK_THROWS_AS(rep_table({100, 10, 0}), DomainError);
  CHECK_THROWS_AS(rep_table({kMaxWindowEnd, 10, 2}), CapacityError);
  CHECK_THROWS_AS(rep_table({kMaxWindowEndLinear, 10, 1}), CapacityError);
  CHECK_THROWS_AS(RepOracle(kOracleMax + 1), CapacityError);
  CHECK_THROWS_AS(rep_table_oracle({kOracleMax, 10, 2}), CapacityError);
}
