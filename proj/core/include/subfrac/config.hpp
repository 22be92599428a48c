#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "subfrac/bernstein.hpp"
#include "subfrac/mc.hpp"
#include "subfrac/models.hpp"

namespace subfrac {

/// One experiment description, parsed from a flat key = value text file
/// (comments start with '#'; lists are comma-separated). Every field has a
/// default, so the echoed form is always complete and self-describing.
/// Schema documented in docs/config.md.
struct ExperimentConfig {
  std::string kind = "mc-vs-pde";

  // Bernstein characteristics
  std::string family = "stable";
  double beta = 0.5;
  double c = 1.0;
  double eta = 1.0;
  std::vector<double> betas;    // distributed_order atoms
  std::vector<double> weights;  // distributed_order weights
  std::vector<double> tab_z;    // tabulated tail nodes
  std::vector<double> tab_w;    // tabulated tail values
  double a = 0.0;
  double k = 0.0;

  // Markov model
  std::string model = "eigen";
  double theta = 0.5;
  double x_max = 8.0;
  double drift_const = 0.0;
  double drift_slope = -1.0;
  double sigma_const = 1.0;
  double sigma_slope = 0.0;
  double jump_intensity = 1.0;
  double jump_rate = 2.0;
  double jump_cut = 2.0;

  // test function
  std::string f = "const";
  double f_value = 1.0;
  double f_center = 0.0;
  double f_width = 1.0;

  // numerics
  std::vector<double> t_grid = {0.25, 0.5, 1.0};
  double x = 0.0;
  std::uint64_t n_samples = 100'000;
  double dt = 1e-3;
  double dx = 0.05;  // spatial step for grid solves (jump_diffusion oracle)
  double ds = 1e-3;
  double em_step = 1e-3;
  std::uint64_t seed = 1;
  std::string mode = "conditional";
  double tolerance_multiplier = 3.0;
  double residual_tolerance = 5e-3;  // laplace-check pass bound
  double horizon = 5.0;              // laplace-check transform horizon
  std::vector<double> lambdas = {5.0, 10.0, 20.0};
  std::vector<double> r_grid = {0.1, 0.5, 1.0};  // cdf-check evaluation points
  double s = 1.0;                                // cdf-check observation time
  std::vector<double> lemma_r = {1.0, 0.5};
  std::vector<double> lemma_t = {1.0, 2.0};
  std::vector<double> dt_levels = {4e-3, 2e-3, 1e-3};

  std::string out = "out";
  int workers = 1;
  bool override_finite_activity = false;

  // sweep.<param> = comma list; applied as a Cartesian product by `sweep`
  std::map<std::string, std::vector<double>> sweep;

  BernsteinChar characteristics() const;
  MarkovModel make_model() const;
  TestFunction test_function() const;
  McParams mc_params() const;

  /// Canonical echo of every effective value, itself parseable.
  std::string echo() const;
};

/// Parse + field-level validation. Errors are ConfigError naming the field.
ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig parse_config_file(const std::string& path);

/// Cross-field validation (kind-specific requirements, module preconditions).
void validate_config(const ExperimentConfig& cfg);

/// Set a scalar numeric field by config-key name (used by sweeps).
void set_config_field(ExperimentConfig& cfg, const std::string& key, double value);

}  // namespace subfrac
