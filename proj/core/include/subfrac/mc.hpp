#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "subfrac/bernstein.hpp"
#include "subfrac/models.hpp"

namespace subfrac {

/// conditional: average the deterministic T_tau f(x) over clock draws tau
/// (lower variance; needs an evaluable semigroup). pathwise: simulate the
/// Markov path to time tau and average f(Y_tau).
enum class McMode { kConditional, kPathwise };

std::string mc_mode_name(McMode mode);

struct MCEstimate {
  double mean = 0.0;
  double std_error = 0.0;  // sample standard deviation / sqrt(n)
  std::size_t n = 0;
  std::uint64_t seed = 0;
  double wall_time = 0.0;  // seconds
  McMode mode = McMode::kConditional;
  double bias_bound = 0.0;  // deterministic clock-discretization bound

  double error_budget(double z = 3.0) const { return z * std_error + bias_bound; }
};

struct McParams {
  std::size_t n = 100'000;
  std::uint64_t seed = 1;
  int workers = 1;
  McMode mode = McMode::kConditional;
  double ds = 1e-3;       // subordinator path step where no exact sampler applies
  double em_step = 1e-3;  // Euler-Maruyama step for pathwise mode
  bool allow_finite_activity = false;
};

/// Monte Carlo estimate of u(t,x) = E[T_{E_t^S} f(x)]. Sample i draws from
/// RngStream(seed, i) and reductions are fixed-order pairwise sums, so the
/// result is bit-identical for any worker count.
MCEstimate estimate_u(const BernsteinChar& ch, const MarkovModel& model, const TestFunction& f,
                      double t, double x, const McParams& params);

/// One estimate per point of the strictly increasing grid ts. Path-based
/// clock draws reuse one trajectory per sample across the grid (monotone
/// coupling); exact conditional draws are independent per point.
std::vector<MCEstimate> estimate_u_curve(const BernsteinChar& ch, const MarkovModel& model,
                                         const TestFunction& f, const std::vector<double>& ts,
                                         double x, const McParams& params);

/// Unkilled pipeline (pre: ch.kill_rate == 0), written independently of the
/// killed one; with the same seed it reproduces estimate_u bit-for-bit at
/// kill rate 0.
MCEstimate estimate_u_unkilled(const BernsteinChar& ch, const MarkovModel& model,
                               const TestFunction& f, double t, double x, const McParams& params);

std::vector<MCEstimate> estimate_u_curve_unkilled(const BernsteinChar& ch,
                                                  const MarkovModel& model, const TestFunction& f,
                                                  const std::vector<double>& ts, double x,
                                                  const McParams& params);

}  // namespace subfrac
