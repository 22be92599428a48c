#include "subfrac/special.hpp"

#include <cmath>
#include <stdexcept>

#include "subfrac/errors.hpp"

namespace subfrac {

double mittag_leffler(double beta, double z) {
  if (beta <= 0.0) throw std::domain_error("mittag_leffler: beta must be > 0");
  double sum = 1.0;
  double prev = 1.0;
  for (int n = 1; n < 400; ++n) {
    // term = z^n / Gamma(beta n + 1), via logs to dodge overflow
    const double log_mag = static_cast<double>(n) * std::log(std::abs(z)) - std::lgamma(beta * n + 1.0);
    double term = std::exp(log_mag);
    if (z < 0.0 && (n & 1)) term = -term;
    sum += term;
    if (std::abs(term) < 1e-18 && std::abs(prev) < 1e-18) return sum;
    prev = term;
  }
  throw NumericError("mittag_leffler: series did not converge for beta=" + std::to_string(beta) +
                     ", z=" + std::to_string(z));
}

double expint_e1(double x) {
  if (x <= 0.0) throw std::domain_error("expint_e1: x must be > 0");
  return -std::expint(-x);
}

}  // namespace subfrac
