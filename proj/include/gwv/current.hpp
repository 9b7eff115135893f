#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "gwv/quadrature.hpp"
#include "gwv/regions.hpp"

namespace gwv {

// Per-state factor functions of the O integrand, kept separate so the
// algebraic cancellation of 2E in their product can be asserted directly.
double work_rate(MomentumPoint p, const UnitSystem& units, double epsilon);  // 2E / Delta t
double virtual_multiplicity(MomentumPoint p, const UnitSystem& units,
                            double t_bal);  // delta_E_bal / (2E)

// T * (2E/Delta t) * (delta_E_bal/2E) = (e eps hbar / 2 t_bal) p_x/(p_x^2+p_y^2);
// zero for p_x <= 0.
double power_integrand(MomentumPoint p, const RegionConfig& cfg);

// T / Delta t = (e eps / 2) p_x/(p_x^2+p_y^2); zero for p_x <= 0.
double rate_integrand(MomentumPoint p, const RegionConfig& cfg);

// Integral of f over the requested region (without the state-count prefactor).
// AdaptivePolar and CartesianStrip trace the region through its boundary
// curves; MonteCarlo samples a bounding box and rejects via classify(), which
// keeps the two routes independent.
IntegralEstimate integrate_region(const RegionConfig& cfg, RegionClass which,
                                  const std::function<double(MomentumPoint)>& f,
                                  const QuadratureConfig& quad);

// (2 pi hbar)^-2 * integral_O of the power integrand. Equals e^2 eps^2/(4 pi h)
// for t_bal <= t_c; for t_bal > t_c the integral runs over the shrunken
// O = V ∩ B ∩ F as a model extension.
IntegralEstimate quasi_ohmic_power_estimate(const RegionConfig& cfg, const QuadratureConfig& quad);
double quasi_ohmic_power(const RegionConfig& cfg, const QuadratureConfig& quad);

// quasi_ohmic_power / eps^2; e^2/(4 pi h) in the closed-form regime.
double conductivity(const RegionConfig& cfg, const QuadratureConfig& quad);

// (2 pi hbar)^-2 * integral_S of the rate integrand. Requires t_bal > t_c
// (RegimeError otherwise); converges to schwinger_asymptotic_rate as
// t_bal/t_c grows, with O(t_c/t_bal) corrections.
IntegralEstimate schwinger_region_rate_estimate(const RegionConfig& cfg,
                                                const QuadratureConfig& quad);
double schwinger_region_rate(const RegionConfig& cfg, const QuadratureConfig& quad);

// [e^{3/2} eps^{3/2} / (4 pi^2 hbar^{3/2} c^{1/2})] exp(-pi m^2 c^3/(e eps hbar)),
// c = v_f; the m = 0 limit is the massless 2+1-D reference rate.
double schwinger_reference_rate(double mass, double epsilon, const UnitSystem& units);

// Reference rate times B(1/2, 3/4)/4: the t_bal -> infinity limit of the
// S-region rate.
double schwinger_asymptotic_rate(double epsilon, const UnitSystem& units);

struct CurrentResult {
    double epsilon = 0.0;
    double t_bal = 0.0;
    double t_c = 0.0;
    double power_O = 0.0;
    double sigma_O = 0.0;
    double rate_S = 0.0;
    double carrier_density = 0.0;
    double j_quasi = 0.0;
    double j_schwinger = 0.0;
    double j_total = 0.0;
    std::string regime;             // quasi-ohmic | crossover | schwinger (or "error" in sweeps)
    bool o_region_extended = false; // O integral evaluated beyond the closed-form regime
    std::string error_message;      // set only for failed sweep cells
};

// Assembles both mechanisms: j_quasi = sigma_O * eps, n = rate_S * t_bal,
// j_schwinger = e n v_f, j_total = j_quasi + j_schwinger. Regime label by
// t_bal/t_c (< 0.3 quasi-ohmic, > 3 schwinger, else crossover) — a reporting
// convention, never used inside any computation. Adaptive methods use the
// per-integral defaults (polar for O, strips for S).
CurrentResult current(double epsilon, double t_bal, const UnitSystem& units,
                      const QuadratureConfig& quad);

// Row per (eps, t_bal) pair, eps outer, t_bal inner. Cell failures are
// recorded in-row and the sweep continues. Cells are independent; results are
// identical for any thread count.
std::vector<CurrentResult> sweep(std::span<const double> eps_grid,
                                 std::span<const double> tbal_grid, const UnitSystem& units,
                                 const QuadratureConfig& quad, int threads = 1);

std::vector<double> linear_grid(double lo, double hi, int steps);
std::vector<double> geometric_grid(double lo, double hi, int steps);

}  // namespace gwv
