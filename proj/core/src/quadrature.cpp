#include "subfrac/quadrature.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <string>

#include "subfrac/errors.hpp"

namespace subfrac::quad {

double finite(const std::function<double(double)>& f, double a, double b, double rel_tol) {
  if (!(a < b)) return 0.0;
  double error = 0.0;
  const double value =
      boost::math::quadrature::gauss_kronrod<double, 15>::integrate(f, a, b, 15, rel_tol, &error);
  const double scale = std::max(std::abs(value), 1e-30);
  if (!std::isfinite(value) || error / scale > 100.0 * rel_tol) {
    throw NumericError("quadrature on [" + std::to_string(a) + ", " + std::to_string(b) +
                       "] did not converge (error estimate " + std::to_string(error) + ")");
  }
  return value;
}

double zero_to_inf(const std::function<double(double)>& f, double rel_tol) {
  boost::math::quadrature::exp_sinh<double> integrator;
  double error = 0.0;
  double l1 = 0.0;
  const double value = integrator.integrate(f, rel_tol, &error, &l1);
  const double scale = std::max(std::abs(value), 1e-30);
  if (!std::isfinite(value) || error / scale > 100.0 * rel_tol) {
    throw NumericError("quadrature on (0, inf) did not converge (error estimate " +
                       std::to_string(error) + ")");
  }
  return value;
}

}  // namespace subfrac::quad
