#include "subfrac/fpde.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

#include "subfrac/errors.hpp"

namespace subfrac {
namespace {

constexpr double kPi = 3.14159265358979323846;

std::size_t step_count(double horizon, double dt) {
  if (!(horizon > 0.0) || !(dt > 0.0))
    throw std::invalid_argument("solver requires horizon > 0 and dt > 0");
  const double raw = horizon / dt;
  auto n = static_cast<std::size_t>(std::ceil(raw - 1e-9));
  return n == 0 ? 1 : n;
}

// History term of the memory operator at step n (n >= 1):
// sum_{j=1}^{n-1} (u_j - u_0)(V_{n-j} - V_{n-1-j}).
double history_sum(const std::vector<double>& u, const std::vector<double>& v, std::size_t n) {
  double h = 0.0;
  for (std::size_t j = 1; j + 1 <= n; ++j) h += (u[j] - u[0]) * (v[n - j] - v[n - j - 1]);
  return h;
}

std::vector<double> model_grid(const MarkovModel& model, double dx) {
  if (!(dx > 0.0)) throw std::invalid_argument("grid solver requires dx > 0");
  std::vector<double> grid;
  if (model.kind() == MarkovModel::Kind::kBrownianTorus) {
    const auto m = std::max<long>(3, std::lround(2.0 * kPi / dx));
    const double step = 2.0 * kPi / static_cast<double>(m);
    for (long i = 0; i < m; ++i) grid.push_back(step * static_cast<double>(i));
  } else {
    const double half_width = model.x_max();
    const auto half = std::max<long>(2, std::lround(half_width / dx));
    const double step = half_width / static_cast<double>(half);
    // interior nodes only; the absorbed value 0 beyond the ends is implicit
    for (long i = 1; i < 2 * half; ++i)
      grid.push_back(-half_width + step * static_cast<double>(i));
  }
  return grid;
}

}  // namespace

KernelWeights kernel_weights(const TailKernel& kernel, double dt, std::size_t n_max) {
  if (!(dt > 0.0) || n_max == 0)
    throw std::invalid_argument("kernel_weights requires dt > 0 and n_max >= 1");
  KernelWeights kw;
  kw.dt = dt;
  kw.toeplitz.resize(n_max);
  double prev = 0.0;  // G(0)
  for (std::size_t m = 0; m < n_max; ++m) {
    const double next = kernel.G(dt * static_cast<double>(m + 1));
    if (!std::isfinite(next)) throw NumericError("kernel_weights: G evaluation not finite");
    kw.toeplitz[m] = next - prev;
    prev = next;
  }
  return kw;
}

ScalarSolution solve_scalar(const BernsteinChar& ch, double theta, double horizon, double dt) {
  if (!(theta >= 0.0)) throw std::invalid_argument("solve_scalar requires theta >= 0");
  const std::size_t n_steps = step_count(horizon, dt);
  const KernelWeights kw = kernel_weights(TailKernel(ch.measure), dt, n_steps);
  const std::vector<double>& v = kw.toeplitz;
  const double k = ch.drift;
  const double a = ch.kill_rate;

  const double denom = k / dt + v[0] / dt + theta + a;
  if (!(denom > 0.0)) throw NumericError("solve_scalar: degenerate implicit coefficient");

  ScalarSolution sol;
  sol.dt = dt;
  sol.values.assign(n_steps + 1, 0.0);
  sol.values[0] = 1.0;
  for (std::size_t n = 1; n <= n_steps; ++n) {
    const double hist = history_sum(sol.values, v, n);
    double rhs = k * sol.values[n - 1] / dt + sol.values[0] * v[0] / dt - hist / dt;
    if (a != 0.0) rhs += a;
    sol.values[n] = rhs / denom;
  }
  return sol;
}

ScalarSolution solve_scalar_unkilled(const BernsteinChar& ch, double theta, double horizon,
                                     double dt) {
  if (ch.kill_rate != 0.0)
    throw ConfigError("solve_scalar_unkilled requires characteristics with kill rate 0");
  if (!(theta >= 0.0)) throw std::invalid_argument("solve_scalar_unkilled requires theta >= 0");
  const std::size_t n_steps = step_count(horizon, dt);
  const KernelWeights kw = kernel_weights(TailKernel(ch.measure), dt, n_steps);
  const std::vector<double>& v = kw.toeplitz;
  const double k = ch.drift;

  const double denom = k / dt + v[0] / dt + theta;
  if (!(denom > 0.0)) throw NumericError("solve_scalar_unkilled: degenerate implicit coefficient");

  ScalarSolution sol;
  sol.dt = dt;
  sol.values.assign(n_steps + 1, 0.0);
  sol.values[0] = 1.0;
  for (std::size_t n = 1; n <= n_steps; ++n) {
    const double hist = history_sum(sol.values, v, n);
    sol.values[n] =
        (k * sol.values[n - 1] / dt + sol.values[0] * v[0] / dt - hist / dt) / denom;
  }
  return sol;
}

double GridSolution::at(std::size_t n, double xq) const {
  const std::vector<double>& u = values.at(n);
  if (x.empty() || xq < x.front() || xq > x.back()) return 0.0;
  const double pos = (xq - x.front()) / dx;
  const auto j = static_cast<std::size_t>(pos);
  if (j + 1 >= x.size()) return u.back();
  const double frac = pos - static_cast<double>(j);
  return (1.0 - frac) * u[j] + frac * u[j + 1];
}

namespace {

GridSolution run_grid(const BernsteinChar& ch, const MarkovModel& model, const TestFunction& f,
                      double horizon, double dt, double dx, bool with_kill) {
  const std::size_t n_steps = step_count(horizon, dt);
  const KernelWeights kw = kernel_weights(TailKernel(ch.measure), dt, n_steps);
  const std::vector<double>& v = kw.toeplitz;
  const double k = ch.drift;
  const double a = ch.kill_rate;

  GridSolution sol;
  sol.dt = dt;
  sol.x = model_grid(model, dx);
  sol.dx = sol.x.size() > 1 ? sol.x[1] - sol.x[0] : dx;
  const auto m = static_cast<Eigen::Index>(sol.x.size());

  const Eigen::MatrixXd lgen = generator_matrix(model, sol.x);
  const double local = k / dt + v[0] / dt + (with_kill ? a : 0.0);
  Eigen::MatrixXd lhs = -lgen;
  lhs.diagonal().array() += local;
  const Eigen::PartialPivLU<Eigen::MatrixXd> lu(lhs);

  Eigen::VectorXd u0(m);
  for (Eigen::Index i = 0; i < m; ++i) u0[i] = f.value(sol.x[static_cast<std::size_t>(i)]);

  std::vector<Eigen::VectorXd> us;
  us.reserve(n_steps + 1);
  us.push_back(u0);
  for (std::size_t n = 1; n <= n_steps; ++n) {
    Eigen::VectorXd hist = Eigen::VectorXd::Zero(m);
    for (std::size_t j = 1; j + 1 <= n; ++j)
      hist += (us[j] - u0) * (v[n - j] - v[n - j - 1]);
    Eigen::VectorXd rhs = k / dt * us[n - 1] + v[0] / dt * u0 - hist / dt;
    if (with_kill && a != 0.0) rhs += a * u0;
    us.push_back(lu.solve(rhs));
    if (!us.back().allFinite()) throw NumericError("grid solver produced non-finite values");
  }

  sol.values.resize(n_steps + 1);
  for (std::size_t n = 0; n <= n_steps; ++n)
    sol.values[n].assign(us[n].data(), us[n].data() + m);
  return sol;
}

}  // namespace

GridSolution solve_grid_1d(const BernsteinChar& ch, const MarkovModel& model,
                           const TestFunction& f, double horizon, double dt, double dx) {
  return run_grid(ch, model, f, horizon, dt, dx, /*with_kill=*/true);
}

GridSolution solve_grid_1d_unkilled(const BernsteinChar& ch, const MarkovModel& model,
                                    const TestFunction& f, double horizon, double dt, double dx) {
  if (ch.kill_rate != 0.0)
    throw ConfigError("solve_grid_1d_unkilled requires characteristics with kill rate 0");
  return run_grid(ch, model, f, horizon, dt, dx, /*with_kill=*/false);
}

std::vector<double> caputo_special(double beta, const std::vector<double>& g, double dt) {
  if (!(beta > 0.0 && beta < 1.0))
    throw std::invalid_argument("caputo_special requires beta in (0,1)");
  if (!(dt > 0.0)) throw std::invalid_argument("caputo_special requires dt > 0");
  if (g.empty()) throw std::invalid_argument("caputo_special requires a non-empty sample");
  std::vector<double> out(g.size(), 0.0);
  if (g.size() == 1) return out;
  const KernelWeights kw =
      kernel_weights(TailKernel(LevyMeasure::stable(beta)), dt, g.size() - 1);
  const std::vector<double>& v = kw.toeplitz;
  for (std::size_t n = 1; n < g.size(); ++n)
    out[n] = ((g[n] - g[0]) * v[0] + history_sum(g, v, n)) / dt;
  return out;
}

std::vector<double> laplace_check(const ScalarSolution& sol, const BernsteinChar& ch, double theta,
                                  const std::vector<double>& lambdas) {
  if (sol.values.size() < 2 || !(sol.dt > 0.0))
    throw std::invalid_argument("laplace_check requires a computed solution");
  const double horizon = sol.horizon();
  std::vector<double> residuals;
  residuals.reserve(lambdas.size());
  for (double lam : lambdas) {
    if (!(lam > 0.0)) throw std::invalid_argument("laplace_check requires lambda > 0");
    if (std::exp(-lam * horizon) > 1e-8)
      throw std::invalid_argument("laplace_check: horizon too short for requested lambda");
    double transform = 0.0;
    for (std::size_t n = 0; n < sol.values.size(); ++n) {
      const double wq = (n == 0 || n + 1 == sol.values.size()) ? 0.5 : 1.0;
      transform += wq * std::exp(-lam * sol.time(n)) * sol.values[n];
    }
    transform *= sol.dt;
    const double phi = phi_eval(ch, lam);
    residuals.push_back(std::abs(transform - phi / (lam * (phi + theta))));
  }
  return residuals;
}

}  // namespace subfrac
