#include "waring/parallel.hpp"

#include <charconv>
#include <cstdlib>
#include <cstring>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace waring {

int max_threads() noexcept {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

void set_threads(int n) noexcept {
  if (n < 1) return;
#ifdef _OPENMP
  omp_set_num_threads(n);
#endif
}

std::optional<int> threads_from_env() {
  const char* raw = std::getenv(kThreadsEnvVar);
  if (raw == nullptr) return std::nullopt;
  int value = 0;
  const char* end = raw + std::strlen(raw);
  auto [ptr, ec] = std::from_chars(raw, end, value);
  if (ec != std::errc{} || ptr != end || value < 1) return std::nullopt;
  return value;
}

}  // namespace waring
