#pragma once

#include <Eigen/Dense>
#include <functional>
#include <string>
#include <vector>

#include "subfrac/rng.hpp"

namespace subfrac {

/// A bounded test function with optional analytic derivatives. When a
/// derivative is missing, generator evaluation falls back to central
/// differences with step 1e-4. is_eigen marks functions satisfying
/// L f = -eigenvalue * f for their paired model.
struct TestFunction {
  std::string name;
  std::function<double(double)> value;
  std::function<double(double)> deriv1;
  std::function<double(double)> deriv2;
  double sup_norm = 1.0;
  bool is_eigen = false;
  double eigenvalue = 0.0;

  double operator()(double x) const { return value(x); }
};

namespace test_functions {
TestFunction constant(double c);
TestFunction sine();    // eigenfunction of the half-Laplacian, eigenvalue 1/2
TestFunction cosine();  // likewise
TestFunction gaussian(double center, double width);
}  // namespace test_functions

/// Markov process catalog: the abstract eigenfunction model (T_s f = e^{-theta s} f),
/// Brownian motion on the torus [0, 2pi), Brownian motion on a truncated line
/// with absorbing ends, and the 1-D jump-diffusion
///   dY = b(Y) dt + sigma(Y) dB + jumps,
/// with affine b and sigma and exponential jump sizes conditioned to (0, cut].
class MarkovModel {
 public:
  enum class Kind { kEigen, kBrownianTorus, kBrownianLine, kJumpDiffusion };

  struct JumpDiffusionParams {
    double drift_const = 0.0;  // b(y) = drift_const + drift_slope * y
    double drift_slope = 0.0;
    double sigma_const = 1.0;  // sigma(y) = sigma_const + sigma_slope * y
    double sigma_slope = 0.0;
    double jump_intensity = 1.0;  // arrival rate of jumps
    double jump_rate = 2.0;       // Exp(jump_rate) sizes ...
    double jump_cut = 2.0;        // ... conditioned to (0, jump_cut]
    double x_max = 8.0;           // half-width of the working domain
  };

  static MarkovModel eigen(double theta);
  static MarkovModel brownian_torus();
  static MarkovModel brownian_line(double x_max);
  static MarkovModel jump_diffusion(const JumpDiffusionParams& params);

  Kind kind() const { return kind_; }
  std::string kind_name() const;
  double eigen_theta() const;
  double x_max() const;
  const JumpDiffusionParams& jd() const;

  /// intensity * E[Z 1{Z < 1}]: subtracting this from b converts the
  /// compensated-small-jump generator into plain-jump dynamics.
  double jump_compensation() const;

  /// Uniform bound M of the semigroup (all catalog members are contractions).
  double semigroup_bound() const { return 1.0; }

  /// True when T_s f is evaluable without simulation.
  bool deterministic_semigroup() const { return kind_ != Kind::kJumpDiffusion; }

 private:
  MarkovModel() = default;
  Kind kind_ = Kind::kEigen;
  double theta_ = 0.0;
  double x_max_ = 0.0;
  JumpDiffusionParams jd_{};
  double jump_comp_ = 0.0;
};

/// T_s f(x) for the deterministic variants (eigen decay, Gaussian
/// convolution, absorbing heat kernel by reflections). s >= 0.
double semigroup_apply(const MarkovModel& model, double s, const TestFunction& f, double x);

struct MeanVar {
  double mean = 0.0;
  double std_error = 0.0;
};

/// Monte Carlo T_s f(x) over n_paths Euler-Maruyama paths with step `step`
/// (Brownian variants advance exactly). Required for the jump-diffusion.
MeanVar semigroup_apply_mc(const MarkovModel& model, double s, const TestFunction& f, double x,
                           RngStream& rng, std::size_t n_paths, double step);

/// Generator L f(x): eigen decay rate, half-Laplacian, or the jump-diffusion
/// form b f' + (sigma^2/2) f'' + compensated jump integrals (quadrature).
double generator_apply(const MarkovModel& model, const TestFunction& f, double x);

/// Dense discretization of L on a uniform grid: periodic second differences
/// for the torus, absorbing (zero outside) for line and jump-diffusion; the
/// jump integral uses midpoint quadrature with linear interpolation between
/// grid nodes. Used by the deterministic grid solver.
Eigen::MatrixXd generator_matrix(const MarkovModel& model, const std::vector<double>& grid);

/// Incremental path simulator: advance_to(s) with non-decreasing s returns
/// Y_s along one trajectory. Brownian variants advance exactly; the
/// jump-diffusion uses Euler-Maruyama steps of at most `step` with per-step
/// Poisson jump counts (exact in law for the jump component).
class MarkovPathSimulator {
 public:
  MarkovPathSimulator(const MarkovModel& model, double x0, double step, RngStream rng);

  double advance_to(double s);
  double position() const { return y_; }

 private:
  const MarkovModel model_;
  double step_;
  RngStream rng_;
  double y_;
  double time_ = 0.0;
};

}  // namespace subfrac
