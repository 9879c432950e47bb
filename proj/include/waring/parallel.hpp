#pragma once

#include <optional>

namespace waring {

// Environment variable consulted for the default worker count.
inline constexpr const char* kThreadsEnvVar = "WARING_LAB_THREADS";

// Number of OpenMP workers kernels will use (1 without OpenMP).
int max_threads() noexcept;

// Apply a thread-count hint to OpenMP and the FFT backend. Values < 1 are ignored.
void set_threads(int n) noexcept;

// Parse WARING_LAB_THREADS; nullopt when unset or not a positive integer.
std::optional<int> threads_from_env();

}  // namespace waring
