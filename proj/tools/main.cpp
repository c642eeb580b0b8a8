#include "weingarten/cli.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
  CLI::App app{"Curvature flows of graphs in warped product spaces"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "Run flow scenarios and write CSV/JSON results");
  std::vector<std::filesystem::path> configs;
  std::filesystem::path out_dir;
  std::size_t jobs = 1;
  run->add_option("--config", configs, "Scenario file (repeatable)")->required()->check(CLI::ExistingFile);
  run->add_option("--out", out_dir, "Output directory")->required();
  run->add_option("--jobs", jobs, "Concurrent scenarios")->check(CLI::PositiveNumber);

  auto* check = app.add_subcommand("check", "Certify a curvature function by random sampling");
  std::string function;
  int n = 0;
  int k = 0;
  std::size_t samples = 10000;
  std::uint64_t seed = 42;
  bool allow_nonvanishing = false;
  check->add_option("--function", function, "sigma1, sigma_k_root, gauss_root, harmonic_mean, quotient")
      ->required();
  check->add_option("--n", n, "Dimension")->required()->check(CLI::PositiveNumber);
  check->add_option("--k", k, "Order for sigma_k_root and quotient (default n for quotient)");
  check->add_option("--samples", samples, "Number of random samples");
  check->add_option("--seed", seed, "Random seed");
  check->add_flag("--allow-nonvanishing", allow_nonvanishing,
                  "Report a failed boundary check as exempt for functions flagged non-vanishing");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : weingarten::exit_code::invalid;
  }

  if (*run) return weingarten::run_command(configs, out_dir, jobs, std::cerr);
  return weingarten::check_command(function, n, k, samples, seed, allow_nonvanishing, std::cout);
}
