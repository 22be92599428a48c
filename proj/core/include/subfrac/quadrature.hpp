#pragma once

#include <functional>

namespace subfrac::quad {

/// Adaptive Gauss-Kronrod integration over a finite interval [a, b]. `f`
/// may have an integrable endpoint singularity. Throws NumericError when
/// the error estimate stays above the requested tolerance.
double finite(const std::function<double(double)>& f, double a, double b, double rel_tol = 1e-9);

/// Integration over (0, inf) for integrands that decay at infinity and may
/// blow up (integrably) at 0.
double zero_to_inf(const std::function<double(double)>& f, double rel_tol = 1e-9);

}  // namespace subfrac::quad
