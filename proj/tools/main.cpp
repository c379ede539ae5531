#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "follmer/runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{"follmer-kit: pathwise calculus and bilinear evolution runner"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  int threads = 0;
  std::uint64_t seed = 0;
  bool seed_set = false;

  auto* run_cmd = app.add_subcommand("run", "Execute a JSON experiment config");
  run_cmd->add_option("config", config_path, "Path to the config JSON")
      ->required();
  run_cmd->add_option("--out", out_dir, "Output directory (overrides config)");
  run_cmd->add_option("--threads", threads, "Worker threads for ensembles");
  run_cmd->add_option("--seed", seed, "Base seed (overrides config)")
      ->each([&](const std::string&) { seed_set = true; });

  std::vector<std::string> report_dirs;
  auto* report_cmd =
      app.add_subcommand("report", "Merge run manifests into a CSV table");
  report_cmd->add_option("dirs", report_dirs, "Run directories");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run_cmd->parsed()) {
      follmer::run::Overrides overrides;
      if (!out_dir.empty()) overrides.out = out_dir;
      if (threads > 0) overrides.threads = threads;
      if (seed_set) overrides.seed = seed;
      return follmer::run::run_config_file(config_path, overrides);
    }
    std::cout << follmer::run::report_csv(report_dirs);
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
