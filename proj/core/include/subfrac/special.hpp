#pragma once

namespace subfrac {

/// Mittag-Leffler function E_beta(z) = sum_n z^n / Gamma(beta*n + 1),
/// summed until the terms vanish in double precision. Intended for the
/// moderate arguments that show up as eigenfunction time factors
/// (|z| of order one); throws NumericError when the series fails to
/// converge in a reasonable number of terms.
double mittag_leffler(double beta, double z);

/// Exponential integral E1(x) = int_x^inf e^-t / t dt, x > 0.
double expint_e1(double x);

}  // namespace subfrac
