// subfrac: batch runner for time-changed Markov process experiments.
//
// Exit codes: 0 checks pass, 1 validation failure, 2 usage/config error,
// 3 numeric error.

#include <cstdint>
#include <exception>
#include <iostream>
#include <stdexcept>
#include <string>

#include <CLI11.hpp>

#include "subfrac/config.hpp"
#include "subfrac/errors.hpp"
#include "subfrac/experiments.hpp"

namespace {

struct CommonFlags {
  std::string config_path;
  std::uint64_t seed = 0;
  int workers = 0;
  std::string out;
  bool override_finite_activity = false;

  CLI::Option* seed_opt = nullptr;
  CLI::Option* workers_opt = nullptr;
  CLI::Option* out_opt = nullptr;
};

void attach_common(CLI::App* sub, CommonFlags& flags) {
  sub->add_option("--config", flags.config_path, "experiment config file (key = value lines)")
      ->required();
  flags.seed_opt = sub->add_option("--seed", flags.seed, "override the config seed");
  flags.workers_opt = sub->add_option("--workers", flags.workers, "override the worker count");
  flags.out_opt = sub->add_option("--out", flags.out, "override the output directory");
  sub->add_flag("--override-finite-activity", flags.override_finite_activity,
                "allow Monte Carlo with a finite-activity jump measure");
}

subfrac::ExperimentConfig load(const CommonFlags& flags) {
  subfrac::ExperimentConfig cfg = subfrac::parse_config_file(flags.config_path);
  if (flags.seed_opt->count() > 0) cfg.seed = flags.seed;
  if (flags.workers_opt->count() > 0) cfg.workers = flags.workers;
  if (flags.out_opt->count() > 0) cfg.out = flags.out;
  if (flags.override_finite_activity) cfg.override_finite_activity = true;
  return cfg;
}

int report_status(const subfrac::ValidationReport& report) {
  std::cout << report.summary();
  return report.pass() ? 0 : 1;
}

void print_families() {
  std::cout
      << "stable             beta in (0,1)                         infinite activity\n"
      << "gamma              c > 0, eta > 0                        infinite activity\n"
      << "distributed_order  betas in (0,1), weights > 0           infinite activity\n"
      << "exp_jumps          c > 0, eta > 0                        finite activity\n"
      << "tabulated          z increasing > 0, w non-increasing    activity from head slope\n"
      << "none               drift/kill only                       empty measure\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"experiment runner for Markov processes time-changed by an inverse killed "
               "subordinator"};
  app.require_subcommand(1);

  CommonFlags run_flags, sweep_flags;
  std::string validate_path;

  CLI::App* run_cmd = app.add_subcommand("run", "run one experiment and write its report");
  attach_common(run_cmd, run_flags);

  CLI::App* sweep_cmd =
      app.add_subcommand("sweep", "run the Cartesian sweep described by sweep.* keys");
  attach_common(sweep_cmd, sweep_flags);

  app.add_subcommand("list-families", "print the Bernstein family catalog");

  CLI::App* validate_cmd =
      app.add_subcommand("validate-config", "parse + validate a config, print the echo");
  validate_cmd->add_option("--config", validate_path, "experiment config file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (run_cmd->parsed()) return report_status(subfrac::run_experiment(load(run_flags)));
    if (sweep_cmd->parsed()) return report_status(subfrac::run_sweep(load(sweep_flags)));
    if (validate_cmd->parsed()) {
      const subfrac::ExperimentConfig cfg = subfrac::parse_config_file(validate_path);
      subfrac::validate_config(cfg);
      std::cout << cfg.echo();
      return 0;
    }
    print_families();
    return 0;
  } catch (const subfrac::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const subfrac::NumericError& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
