#pragma once

#include <cstdint>
#include <functional>

#include "gwv/errors.hpp"

namespace gwv {

enum class QuadMethod { AdaptivePolar, CartesianStrip, MonteCarlo };

// rel_tol in (0,1); max_evals >= 1000. For Monte Carlo, max_evals is the
// sample count and seed keys the counter-based generator.
struct QuadratureConfig {
    QuadMethod method = QuadMethod::AdaptivePolar;
    double rel_tol = 1e-9;
    long max_evals = 5000000;
    std::uint64_t seed = 1;
};

void validate(const QuadratureConfig& quad);
QuadratureConfig make_quadrature_config(QuadMethod method, double rel_tol, long max_evals,
                                        std::uint64_t seed);

struct IntegralEstimate {
    double value = 0.0;
    // Adaptive: accumulated error bound. Monte Carlo: one standard error.
    double uncertainty = 0.0;
    long evals = 0;
};

// Globally adaptive one-dimensional Gauss-Kronrod (G7, K15) integration with
// QUADPACK-style per-segment error estimation. The segment with the largest
// error estimate is bisected until the summed error falls below
// rel_tol * |integral| or the budget runs out (ConvergenceError, carrying the
// best estimate and its bound). Roundoff-limited segments are frozen rather
// than split forever.
IntegralEstimate integrate_1d(const std::function<double(double)>& f, double a, double b,
                              double rel_tol, long max_evals);

// Iterated integral over x in [x1, x2], y in [ylo(x), yhi(x)]; strips with
// yhi <= ylo contribute zero. Inner integrals run at rel_tol/10.
IntegralEstimate integrate_2d(const std::function<double(double, double)>& f, double x1, double x2,
                              const std::function<double(double)>& ylo,
                              const std::function<double(double)>& yhi, double rel_tol,
                              long max_evals);

struct Box {
    double x1, x2, y1, y2;
};

// Sample i is a pure function of (seed, i), so the estimate is independent of
// evaluation order and partitioning.
double counter_uniform(std::uint64_t seed, std::uint64_t counter);  // in [0, 1)

IntegralEstimate mc_integrate(const std::function<double(double, double)>& f, const Box& box,
                              long n_samples, std::uint64_t seed);

}  // namespace gwv
