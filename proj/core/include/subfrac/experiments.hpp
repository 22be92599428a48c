#pragma once

#include <string>
#include <vector>

#include "subfrac/config.hpp"

namespace subfrac {

struct CheckRecord {
  std::string name;
  double computed = 0.0;
  double oracle = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  double runtime = 0.0;  // seconds
};

struct ValidationReport {
  std::string kind;
  std::vector<CheckRecord> checks;
  double wall_time = 0.0;

  bool pass() const;

  // One line per check plus an overall verdict, for terminal output.
  std::string summary() const;
};

/// Runs the experiment selected by cfg.kind and writes report.json,
/// results.csv and plot.svg under cfg.out. Validates the config first
/// (ConfigError on schema violations).
ValidationReport run_experiment(const ExperimentConfig& cfg);

/// Cartesian product over cfg.sweep (map order, row-major). Cell i runs with
/// seed = cfg.seed ^ i in cfg.out/cell-<i>/ and the combined report plus
/// summary.csv land in cfg.out. The summary has no timing columns, so a
/// repeated run with the same seed reproduces it byte-for-byte.
ValidationReport run_sweep(const ExperimentConfig& cfg);

}  // namespace subfrac
