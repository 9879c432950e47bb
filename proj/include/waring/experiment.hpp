#pragma once

// Run configuration and the three experiment commands behind the CLI. Each
// command writes its artifacts into RunConfig::out_dir and returns their paths.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "waring/gen_sums.hpp"

namespace waring {

inline constexpr const char* kVersion = "0.1.0";

// Process exit codes.
enum ExitCode : int { kExitOk = 0, kExitUsage = 2, kExitMissingInput = 3, kExitCapacity = 4 };

struct RunConfig {
  std::string command;
  unsigned k = 2;
  std::uint64_t N = 10000;
  std::uint64_t H = 100;
  std::vector<unsigned> ells{1, 2, 3};
  double T = kDefaultDamping;
  std::optional<double> B;
  std::optional<double> d;
  std::string mode = "unconditional";
  std::string which = "all";  // lemma ids 1..6 or "all"
  std::optional<std::filesystem::path> zeros;
  std::size_t M = 0;          // grid override, 0 = automatic
  std::filesystem::path out_dir = "waring_out";
  int threads = 0;            // 0 = runtime default
  std::uint64_t seed = 20240601;
  bool oracle = false;        // count: use the brute-force oracle instead

  // ConfigError/DomainError on values no command accepts.
  void validate() const;
  nlohmann::json to_json() const;
};

// Lemma ids selected by `which` ("all", "3", "1,4,6"); ConfigError otherwise.
std::vector<int> parse_lemma_ids(const std::string& which);

// Zeros file: explicit path if given, else data/zeta_zeros_100.txt relative to
// the working directory, else the copy in the source tree.
std::filesystem::path resolve_zeros_path(const RunConfig& config);

std::vector<std::filesystem::path> cmd_count(const RunConfig& config);
std::vector<std::filesystem::path> cmd_lemmas(const RunConfig& config);
std::vector<std::filesystem::path> cmd_decompose(const RunConfig& config);

// Runs config.command, maps library exceptions to exit codes and reports
// errors on stderr.
int run_command(const RunConfig& config);

}  // namespace waring
