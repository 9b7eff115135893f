#pragma once

#include <span>

namespace gwv {

// B(a, b) via log-gamma.
double beta_function(double a, double b);

// B(m, n) = 2 * integral_0^{pi/2} sin^{2m-1} cos^{2n-1} d theta, evaluated by
// adaptive quadrature as an independent route for beta_function.
double beta_by_quadrature(double m, double n, double rel_tol = 1e-12);

// integral_0^1 Arctan(sqrt(s^-4 - 1)) ds = B(1/2, 3/4) / 2; appears (divided
// by two) as the ratio of the deep-Schwinger creation rate to the reference
// pair-creation rate.
double arctan_profile_integral(double rel_tol = 1e-12);

// Least-squares slope of log y against log x.
double fit_loglog_slope(std::span<const double> x, std::span<const double> y);

}  // namespace gwv
