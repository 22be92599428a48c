#pragma once

#include <cstddef>
#include <vector>

#include "subfrac/bernstein.hpp"
#include "subfrac/models.hpp"

namespace subfrac {

/// Convolution weights of the discrete memory operator. With u piecewise
/// constant on time cells, int_0^{t_n} w(t_n - s)(u(s) - u(0)) ds
/// = sum_{j<=n} (u_j - u_0) W_{n,j} where W_{n,j} = G(t_n - t_{j-1}) - G(t_n - t_j)
/// depends on n - j only: W_{n,j} = toeplitz[n - j].
struct KernelWeights {
  double dt = 0.0;
  std::vector<double> toeplitz;  // toeplitz[m] = G((m+1) dt) - G(m dt)

  double w(std::size_t n, std::size_t j) const { return toeplitz.at(n - j); }
};

/// pre: dt > 0, n_max >= 1.
KernelWeights kernel_weights(const TailKernel& kernel, double dt, std::size_t n_max);

/// Time factor of a separated solution u(t,x) = values(t) * f(x); values[0] = 1.
struct ScalarSolution {
  double dt = 0.0;
  std::vector<double> values;

  double time(std::size_t n) const { return dt * static_cast<double>(n); }
  double horizon() const { return time(values.size() - 1); }
};

/// Implicit stepping for  k u' + d_t^w u = -(theta + a) u + a,  u(0) = 1
/// (the memory equation for an eigenfunction with L f = -theta f). First
/// order in dt; unconditionally stable (all local coefficients >= 0).
ScalarSolution solve_scalar(const BernsteinChar& ch, double theta, double horizon, double dt);

/// The same scheme without the killing terms: k u' + d_t^w u = -theta u.
/// pre: ch.kill_rate == 0. Kept as an independently written code path so the
/// a = 0 reduction can be checked bit-for-bit against solve_scalar.
ScalarSolution solve_scalar_unkilled(const BernsteinChar& ch, double theta, double horizon,
                                     double dt);

/// Space-time solution on a uniform 1-D grid (periodic for the torus,
/// absorbing interior nodes for line and jump-diffusion models).
struct GridSolution {
  double dt = 0.0;
  double dx = 0.0;
  std::vector<double> x;
  std::vector<std::vector<double>> values;  // values[n][m] = u(t_n, x_m)

  double time(std::size_t n) const { return dt * static_cast<double>(n); }
  /// Linear interpolation in x at time index n; 0 outside the grid.
  double at(std::size_t n, double xq) const;
};

/// Implicit-in-local-terms, explicit-in-history stepping of
///   (k d_t + d_t^w) u = (L - a) u + a f
/// with L the model's discretized generator. dx is snapped so the domain
/// closes exactly.
GridSolution solve_grid_1d(const BernsteinChar& ch, const MarkovModel& model,
                           const TestFunction& f, double horizon, double dt, double dx);

/// Independently written a = 0 variant of solve_grid_1d (pre: ch.kill_rate == 0).
GridSolution solve_grid_1d_unkilled(const BernsteinChar& ch, const MarkovModel& model,
                                    const TestFunction& f, double horizon, double dt, double dx);

/// Discrete Caputo derivative of order beta in (0,1) of the sampled function
/// g (uniform grid, g[0] at t = 0): the memory operator with the stable
/// kernel w(z) = z^{-beta} / Gamma(1-beta). Entry [0] is 0 by convention.
std::vector<double> caputo_special(double beta, const std::vector<double>& g, double dt);

/// Residuals |U~(lambda) - phi(lambda) / (lambda (phi(lambda) + theta))| of the
/// trapezoid Laplace transform of the scalar solution, one per lambda.
/// pre: exp(-lambda * horizon) <= 1e-8 for every lambda (truncation control).
std::vector<double> laplace_check(const ScalarSolution& sol, const BernsteinChar& ch, double theta,
                                  const std::vector<double>& lambdas);

}  // namespace subfrac
