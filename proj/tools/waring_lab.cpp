// waring_lab: count | lemmas | decompose

#include <CLI11.hpp>

#include "waring/experiment.hpp"

int main(int argc, char** argv) {
  waring::RunConfig cfg;
  CLI::App app{"Short-interval Waring-Goldbach experiments"};
  app.set_version_flag("--version", waring::kVersion);
  app.require_subcommand(1);

  auto common = [&cfg](CLI::App* sub) {
    sub->add_option("--k", cfg.k, "exponent of the first prime")->capture_default_str();
    sub->add_option("--N", cfg.N, "window start")->capture_default_str();
    sub->add_option("--H", cfg.H, "window length")->capture_default_str();
    sub->add_option("--T", cfg.T, "damping cutoff: terms with n^l > T N are dropped")
        ->capture_default_str();
    sub->add_option("--M", cfg.M, "quadrature grid size (power of two)");
    sub->add_option("--out", cfg.out_dir, "output directory")->capture_default_str();
    sub->add_option("--threads", cfg.threads, "worker threads (hint)");
  };

  auto* count = app.add_subcommand("count", "representation counts over the window");
  common(count);
  count->add_flag("--oracle", cfg.oracle, "use the brute-force reference enumeration");

  auto* lemmas = app.add_subcommand("lemmas", "auxiliary estimate sweeps");
  common(lemmas);
  lemmas->add_option("--which", cfg.which, "lemma ids 1-6, comma separated, or all")
      ->capture_default_str();
  lemmas->add_option("--ell", cfg.ells, "exponents l for the generating sums")->delimiter(',');
  lemmas->add_option("--zeros", cfg.zeros, "file of zeta zero ordinates");
  lemmas->add_option("--seed", cfg.seed, "seed for sampled alphas")->capture_default_str();

  auto* decompose = app.add_subcommand("decompose", "term-by-term split of the window integral");
  common(decompose);
  decompose->add_option("--mode", cfg.mode, "unconditional | conditional")->capture_default_str();
  auto* b = decompose->add_option("--B", cfg.B, "major arc parameter");
  decompose->add_option("--d", cfg.d, "B = exp(d (L/log L)^(1/3))")->excludes(b);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : waring::kExitUsage;
  }
  cfg.command = app.get_subcommands().front()->get_name();
  return waring::run_command(cfg);
}
