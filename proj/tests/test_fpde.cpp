#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstddef>
#include <vector>

#include "oracles.hpp"
#include "subfrac/bernstein.hpp"
#include "subfrac/errors.hpp"
#include "subfrac/fpde.hpp"
#include "subfrac/models.hpp"
#include "subfrac/special.hpp"

using namespace subfrac;

namespace {
constexpr double kTwoOverSqrtPi = 1.1283791670955126;
constexpr double kMl = 0.615690344192926;  // E_{1/2}(-0.5)
}  // namespace

TEST_CASE("kernel weights telescope to G") {
  const TailKernel kernel(LevyMeasure::stable(0.5));
  const KernelWeights kw = kernel_weights(kernel, 0.1, 40);
  CHECK(kw.toeplitz.size() == 40);
  CHECK(kw.w(1, 1) == doctest::Approx(0.35682482323055424).epsilon(1e-12));  // G(0.1)
  double acc = 0.0;
  for (std::size_t n = 1; n <= 40; ++n) {
    acc += kw.toeplitz[n - 1];
    CHECK(std::abs(acc - kernel.G(0.1 * static_cast<double>(n))) < 1e-12);
  }
  // Toeplitz structure: weights depend on n - j only.
  CHECK(kw.w(7, 3) == kw.w(12, 8));
  CHECK_THROWS_AS(kernel_weights(kernel, 0.0, 10), std::invalid_argument);
  CHECK_THROWS_AS(kernel_weights(kernel, 0.1, 0), std::invalid_argument);
}

TEST_CASE("theta = 0 keeps the scalar solution pinned at 1") {
  const std::vector<BernsteinChar> chars = {
      BernsteinChar(0.0, 0.0, LevyMeasure::stable(0.5)),
      BernsteinChar(1.5, 0.0, LevyMeasure::stable(0.3)),
      BernsteinChar(0.7, 0.4, LevyMeasure::gamma_process(1.0, 1.0)),
  };
  for (const BernsteinChar& ch : chars) {
    const ScalarSolution sol = solve_scalar(ch, 0.0, 1.0, 1e-2);
    for (double v : sol.values) CHECK(std::abs(v - 1.0) < 1e-12);
  }
}

TEST_CASE("drift-only characteristics reduce to the plain ODE") {
  const BernsteinChar ch(0.0, 1.0, LevyMeasure::none());
  const ScalarSolution sol = solve_scalar(ch, 1.0, 1.0, 1e-3);
  double max_err = 0.0;
  for (std::size_t n = 0; n < sol.values.size(); ++n)
    max_err = std::max(max_err, std::abs(sol.values[n] - std::exp(-sol.time(n))));
  CHECK(max_err < 1e-3);
}

TEST_CASE("stable memory gives the Mittag-Leffler decay") {
  const BernsteinChar ch(0.0, 0.0, LevyMeasure::stable(0.5));
  const ScalarSolution sol = solve_scalar(ch, 0.5, 1.0, 1e-3);
  CHECK(std::abs(sol.values.back() - kMl) < 5e-3);
  CHECK(std::abs(sol.values.back() - mittag_leffler(0.5, -0.5)) < 5e-3);
  // decay and bounds
  for (std::size_t n = 1; n < sol.values.size(); ++n) {
    CHECK(sol.values[n] <= sol.values[n - 1] + 1e-12);
    CHECK(sol.values[n] >= 0.0);
    CHECK(sol.values[n] <= 1.0);
  }
  CHECK(sol.horizon() == doctest::Approx(1.0));
}

TEST_CASE("killed scalar solution matches the a = 0 path bit for bit") {
  const BernsteinChar ch(0.0, 0.3, LevyMeasure::stable(0.5));
  const ScalarSolution killed = solve_scalar(ch, 0.5, 1.0, 1e-3);
  const ScalarSolution plain = solve_scalar_unkilled(ch, 0.5, 1.0, 1e-3);
  REQUIRE(killed.values.size() == plain.values.size());
  std::size_t mismatches = 0;
  for (std::size_t n = 0; n < killed.values.size(); ++n)
    if (killed.values[n] != plain.values[n]) ++mismatches;
  CHECK(mismatches == 0);
  CHECK_THROWS_AS(solve_scalar_unkilled(BernsteinChar(1.0, 0.0, LevyMeasure::stable(0.5)), 0.5,
                                        1.0, 1e-3),
                  ConfigError);
}

TEST_CASE("grid solve pairs with the scalar solve on a torus eigenfunction") {
  const BernsteinChar ch(0.5, 0.0, LevyMeasure::stable(0.5));
  const MarkovModel torus = MarkovModel::brownian_torus();
  const TestFunction f = test_functions::sine();
  const double dx = 2.0 * M_PI / 64.0;
  const GridSolution grid = solve_grid_1d(ch, torus, f, 1.0, 1e-3, dx);
  const double hx = grid.x[1] - grid.x[0];
  const double theta_h = (1.0 - std::cos(hx)) / (hx * hx);
  const ScalarSolution scalar = solve_scalar(ch, theta_h, 1.0, 1e-3);
  REQUIRE(grid.values.size() == scalar.values.size());
  double dev = 0.0;
  for (std::size_t n = 0; n < grid.values.size(); n += 50)
    for (std::size_t m = 0; m < grid.x.size(); ++m)
      dev = std::max(dev,
                     std::abs(grid.values[n][m] - scalar.values[n] * std::sin(grid.x[m])));
  CHECK(dev < 1e-10);
}

TEST_CASE("f = 1 with killing holds the grid solution at 1") {
  const BernsteinChar ch(1.0, 0.2, LevyMeasure::stable(0.5));
  const MarkovModel torus = MarkovModel::brownian_torus();
  const GridSolution grid =
      solve_grid_1d(ch, torus, test_functions::constant(1.0), 0.5, 1e-3, 2.0 * M_PI / 32.0);
  for (const auto& row : grid.values)
    for (double v : row) CHECK(std::abs(v - 1.0) < 1e-13);
}

TEST_CASE("grid solution respects the maximum principle") {
  const BernsteinChar ch(0.5, 0.1, LevyMeasure::stable(0.5));
  const MarkovModel line = MarkovModel::brownian_line(4.0);
  const TestFunction f = test_functions::gaussian(0.0, 1.0);
  const GridSolution grid = solve_grid_1d(ch, line, f, 1.0, 2e-3, 0.1);
  for (const auto& row : grid.values)
    for (double v : row) {
      CHECK(v >= -1e-12);
      CHECK(v <= 1.0 + 1e-12);
    }
  // interpolation accessor: nodes exactly, outside the grid 0
  CHECK(grid.at(0, grid.x[3]) == doctest::Approx(f(grid.x[3])).epsilon(1e-12));
  CHECK(grid.at(10, 100.0) == 0.0);
}

TEST_CASE("grid a = 0 reduction is bit identical") {
  const BernsteinChar ch(0.0, 0.0, LevyMeasure::stable(0.5));
  const MarkovModel torus = MarkovModel::brownian_torus();
  const TestFunction f = test_functions::sine();
  const GridSolution killed = solve_grid_1d(ch, torus, f, 0.3, 2e-3, 2.0 * M_PI / 32.0);
  const GridSolution plain = solve_grid_1d_unkilled(ch, torus, f, 0.3, 2e-3, 2.0 * M_PI / 32.0);
  REQUIRE(killed.values.size() == plain.values.size());
  std::size_t mismatches = 0;
  for (std::size_t n = 0; n < killed.values.size(); ++n)
    for (std::size_t m = 0; m < killed.x.size(); ++m)
      if (killed.values[n][m] != plain.values[n][m]) ++mismatches;
  CHECK(mismatches == 0);
  CHECK_THROWS_AS(solve_grid_1d_unkilled(BernsteinChar(1.0, 0.0, LevyMeasure::stable(0.5)), torus,
                                         f, 0.3, 2e-3, 0.2),
                  ConfigError);
}

TEST_CASE("caputo_special recovers classical fractional derivatives") {
  const double dt = 1e-3;
  const std::size_t n = 1001;
  std::vector<double> ramp(n), flat(n, 2.5);
  for (std::size_t j = 0; j < n; ++j) ramp[j] = dt * static_cast<double>(j);

  const std::vector<double> half = caputo_special(0.5, ramp, dt);
  CHECK(half[0] == 0.0);
  CHECK(std::abs(half.back() - kTwoOverSqrtPi) < 2e-2);  // d^{1/2} t = 2 sqrt(t/pi)

  const std::vector<double> still = caputo_special(0.5, flat, dt);
  for (double v : still) CHECK(std::abs(v) < 1e-12);

  const std::vector<double> almost_first = caputo_special(0.99, ramp, dt);
  CHECK(std::abs(almost_first.back() - 1.0) < 5e-2);

  CHECK_THROWS_AS(caputo_special(1.0, ramp, dt), std::invalid_argument);
  CHECK_THROWS_AS(caputo_special(0.0, ramp, dt), std::invalid_argument);
  CHECK_THROWS_AS(caputo_special(0.5, ramp, 0.0), std::invalid_argument);
}

TEST_CASE("laplace_check residuals") {
  // theta = 0: solution is constant 1 and U~(lambda) = 1/lambda.
  const BernsteinChar stable_ch(0.0, 0.0, LevyMeasure::stable(0.5));
  const ScalarSolution flat = solve_scalar(stable_ch, 0.0, 5.0, 1e-3);
  CHECK(laplace_check(flat, stable_ch, 0.0, {10.0})[0] < 1e-6);

  // killed stable case from the solver's own transform identity
  const BernsteinChar killed(1.0, 0.0, LevyMeasure::stable(0.5));
  const ScalarSolution sol = solve_scalar(killed, 0.5, 5.0, 1e-3);
  const std::vector<double> res = laplace_check(sol, killed, 0.5, {5.0, 10.0, 20.0});
  for (double r : res) CHECK(r < 1e-3);

  // drift-only: U~ = 1/(lambda + theta) exactly
  const BernsteinChar drift(0.0, 1.0, LevyMeasure::none());
  const ScalarSolution ode = solve_scalar(drift, 1.0, 5.0, 1e-3);
  CHECK(laplace_check(ode, drift, 1.0, {10.0})[0] < 1e-4);

  CHECK_THROWS_AS(laplace_check(ode, drift, 1.0, {1.0}), std::invalid_argument);
  CHECK_THROWS_AS(laplace_check(ode, drift, 1.0, {-2.0}), std::invalid_argument);
}
