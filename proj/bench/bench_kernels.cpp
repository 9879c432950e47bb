// Serial reference vs OpenMP kernels. Usage: bench_kernels [repeats]

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>

#include "waring/gen_sums.hpp"
#include "waring/parallel.hpp"
#include "waring/prime_tools.hpp"
#include "waring/quadrature.hpp"
#include "waring/rep_count.hpp"

using namespace waring;

namespace {

double best_of(int repeats, const std::function<void()>& f) {
  double best = 1e300;
  for (int r = 0; r < repeats; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  }
  return best;
}

void row(const char* name, double serial, double fast) {
  std::printf("%-34s %10.4f %10.4f %8.2fx\n", name, serial, fast, serial / fast);
}

}  // namespace

int main(int argc, char** argv) {
  const int repeats = argc > 1 ? std::max(1, std::atoi(argv[1])) : 3;
  std::printf("threads: %d, best of %d\n", max_threads(), repeats);
  std::printf("%-34s %10s %10s %9s\n", "kernel", "serial s", "fast s", "speedup");

  SieveConfig sc;
  sc.max_span = std::uint64_t{1} << 32;
  const std::uint64_t hi = 200'000'000;
  std::size_t sink = 0;
  row("sieve [2, 2e8]",
      best_of(repeats, [&] { sink += sieve_range_reference(2, hi, sc).count(); }),
      best_of(repeats, [&] { sink += sieve_range(2, hi, sc).count(); }));

  const IntervalSpec spec{10'000'000, 1'000'000, 2};
  row("rep_table k=2 N=1e7 H=1e6",
      best_of(repeats, [&] { sink += rep_table_serial(spec).values.size(); }),
      best_of(repeats, [&] { sink += rep_table(spec).values.size(); }));

  const DampedSum s({2, 100'000, kDefaultDamping}, SumKind::von_mangoldt);
  const QuadratureGrid g(std::size_t{1} << 14);
  row("grid samples l=2 N=1e5 M=2^14",
      best_of(repeats, [&] { sink += sample_on_grid_direct(s, g).size(); }),
      best_of(repeats, [&] { sink += sample_on_grid(s, g).size(); }));

  return sink == 0;
}
