// Benchmark CLI: validate, run, and sweep experiment configs.

#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "adaprox/config.hpp"
#include "adaprox/errors.hpp"
#include "adaprox/experiment.hpp"

namespace {

std::string default_out_dir() {
  const char* env = std::getenv("ADAPROX_OUT");
  return env && *env ? env : ".";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"adaprox: adaptive extra-gradient solvers for min-max games and "
               "variational inequalities"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = default_out_dir();
  unsigned workers = 0;
  bool quiet = false;

  auto add_common = [&](CLI::App* cmd, bool with_run_flags) {
    cmd->add_option("config", config_path, "experiment config file")->required();
    if (with_run_flags) {
      cmd->add_option("--out", out_dir, "output directory (default: $ADAPROX_OUT or .)");
      cmd->add_option("--workers", workers, "max parallel seed workers (default: all cores)");
      cmd->add_flag("--quiet", quiet, "suppress progress output");
    }
  };

  CLI::App* validate = app.add_subcommand("validate", "parse and validate a config, print "
                                                      "its normalized form");
  add_common(validate, false);

  CLI::App* run = app.add_subcommand("run", "run an experiment and write trace/report/plot "
                                            "artifacts");
  add_common(run, true);

  CLI::App* sweep = app.add_subcommand("sweep", "run a parameter grid and write a comparison "
                                               "report");
  add_common(sweep, true);

  CLI11_PARSE(app, argc, argv);

  try {
    if (validate->parsed()) {
      adaprox::ExperimentConfig cfg = adaprox::parse_config_file(config_path);
      std::cout << adaprox::normalize_config(cfg);
      return 0;
    }

    adaprox::RunOptions options;
    options.out_dir = out_dir;
    options.workers = workers;
    options.quiet = quiet;

    adaprox::ExperimentConfig cfg = adaprox::parse_config_file(config_path);
    if (run->parsed()) {
      if (cfg.sweep) {
        std::cerr << "config error: [sweep] section present; use the sweep subcommand\n";
        return 1;
      }
      adaprox::run_experiment(cfg, options);
      return 0;
    }
    if (sweep->parsed()) {
      if (!cfg.sweep) {
        std::cerr << "config error: sweep needs a [sweep] section\n";
        return 1;
      }
      adaprox::run_sweep(cfg, options);
      return 0;
    }
  } catch (const adaprox::InvalidConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
