#include "gwv/current.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <thread>

#include "gwv/special.hpp"
#include "gwv/transition.hpp"

namespace gwv {

namespace {

double state_count_prefactor(const UnitSystem& u) {
    const double two_pi_hbar = 2.0 * std::numbers::pi * u.hbar;
    return 1.0 / (two_pi_hbar * two_pi_hbar);
}

// Largest radius still inside V along direction theta: r^2 cos(theta) <= k_V.
double v_radius(double theta, const RegionConfig& cfg) {
    const double c = std::cos(theta);
    if (c <= 0.0) return std::numeric_limits<double>::infinity();
    return std::sqrt(cfg.k_V / c);
}

IntegralEstimate integrate_region_polar(const RegionConfig& cfg, RegionClass which,
                                        const std::function<double(MomentumPoint)>& f,
                                        const QuadratureConfig& quad) {
    auto r_hi = [&cfg, which](double th) {
        double hi = std::min(cfg.r_B, v_radius(th, cfg));
        if (which == RegionClass::O) hi = std::min(hi, cfg.r_F);
        return hi;
    };
    auto r_lo = [&cfg, which, &r_hi](double th) {
        if (which == RegionClass::S) return std::min(cfg.r_F, r_hi(th));
        return 0.0;
    };
    const double half_pi = 0.5 * std::numbers::pi;
    auto integrand = [&f](double th, double r) {
        return f({r * std::cos(th), r * std::sin(th)}) * r;  // polar Jacobian
    };
    return integrate_2d(integrand, -half_pi, half_pi, r_lo, r_hi, quad.rel_tol, quad.max_evals);
}

IntegralEstimate integrate_region_strips(const RegionConfig& cfg, RegionClass which,
                                         const std::function<double(MomentumPoint)>& f,
                                         const QuadratureConfig& quad) {
    double x_max = std::min(std::sqrt(cfg.k_V), cfg.r_B);
    if (which == RegionClass::O) x_max = std::min(x_max, cfg.r_F);
    auto y_fluct = [&cfg](double x) {
        return x < cfg.r_F ? std::sqrt(cfg.r_F * cfg.r_F - x * x) : 0.0;
    };
    auto y_cap = [&cfg](double x) {
        const double ratio = cfg.k_V / x;
        const double yv = std::sqrt(std::max(0.0, ratio * ratio - x * x));
        const double yb = std::sqrt(std::max(0.0, cfg.r_B * cfg.r_B - x * x));
        return std::min(yv, yb);
    };
    std::function<double(double)> y_lo;
    std::function<double(double)> y_hi;
    if (which == RegionClass::S) {
        y_lo = y_fluct;
        y_hi = y_cap;
    } else {
        y_lo = [](double) { return 0.0; };
        y_hi = [&](double x) { return std::min(y_cap(x), y_fluct(x)); };
    }
    // integrands are even in p_y: integrate the upper half strip and double
    auto integrand = [&f](double x, double y) { return 2.0 * f({x, y}); };
    return integrate_2d(integrand, 0.0, x_max, y_lo, y_hi, quad.rel_tol, quad.max_evals);
}

IntegralEstimate integrate_region_mc(const RegionConfig& cfg, RegionClass which,
                                     const std::function<double(MomentumPoint)>& f,
                                     const QuadratureConfig& quad) {
    Box box;
    if (which == RegionClass::O) {
        const double r = std::min(cfg.r_B, cfg.r_F);  // O is contained in B and F
        box = {0.0, r, -r, r};
    } else {
        const double x_max = std::min(std::sqrt(cfg.k_V), cfg.r_B);
        box = {0.0, x_max, -cfg.r_B, cfg.r_B};
    }
    auto sampled = [&](double x, double y) {
        const MomentumPoint p{x, y};
        if (classify(p, cfg).klass != which) return 0.0;
        return f(p);
    };
    return mc_integrate(sampled, box, quad.max_evals, quad.seed);
}

}  // namespace

double work_rate(MomentumPoint p, const UnitSystem& units, double epsilon) {
    const double force = units.e_charge * epsilon;
    return 2.0 * energy(p, units) * force / (2.0 * p.px);
}

double virtual_multiplicity(MomentumPoint p, const UnitSystem& units, double t_bal) {
    return units.hbar / (t_bal * 2.0 * energy(p, units));
}

double power_integrand(MomentumPoint p, const RegionConfig& cfg) {
    if (!(p.px > 0.0)) return 0.0;
    return transition_probability(p) * work_rate(p, cfg.units, cfg.epsilon) *
           virtual_multiplicity(p, cfg.units, cfg.t_bal);
}

double rate_integrand(MomentumPoint p, const RegionConfig& cfg) {
    if (!(p.px > 0.0)) return 0.0;
    const double force = cfg.units.e_charge * cfg.epsilon;
    return transition_probability(p) * force / (2.0 * p.px);
}

IntegralEstimate integrate_region(const RegionConfig& cfg, RegionClass which,
                                  const std::function<double(MomentumPoint)>& f,
                                  const QuadratureConfig& quad) {
    validate(quad);
    if (which == RegionClass::None) throw DomainError("integrate_region: no region selected");
    switch (quad.method) {
        case QuadMethod::AdaptivePolar: return integrate_region_polar(cfg, which, f, quad);
        case QuadMethod::CartesianStrip: return integrate_region_strips(cfg, which, f, quad);
        case QuadMethod::MonteCarlo: return integrate_region_mc(cfg, which, f, quad);
    }
    throw DomainError("integrate_region: unknown method");
}

IntegralEstimate quasi_ohmic_power_estimate(const RegionConfig& cfg,
                                            const QuadratureConfig& quad) {
    auto f = [&cfg](MomentumPoint p) { return power_integrand(p, cfg); };
    IntegralEstimate est = integrate_region(cfg, RegionClass::O, f, quad);
    const double pref = state_count_prefactor(cfg.units);
    est.value *= pref;
    est.uncertainty *= pref;
    return est;
}

double quasi_ohmic_power(const RegionConfig& cfg, const QuadratureConfig& quad) {
    return quasi_ohmic_power_estimate(cfg, quad).value;
}

double conductivity(const RegionConfig& cfg, const QuadratureConfig& quad) {
    return quasi_ohmic_power(cfg, quad) / (cfg.epsilon * cfg.epsilon);
}

IntegralEstimate schwinger_region_rate_estimate(const RegionConfig& cfg,
                                                const QuadratureConfig& quad) {
    if (!(cfg.t_bal > cfg.t_c))
        throw RegimeError("schwinger_region_rate: S region is empty for t_bal <= t_c");
    auto f = [&cfg](MomentumPoint p) { return rate_integrand(p, cfg); };
    IntegralEstimate est = integrate_region(cfg, RegionClass::S, f, quad);
    const double pref = state_count_prefactor(cfg.units);
    est.value *= pref;
    est.uncertainty *= pref;
    return est;
}

double schwinger_region_rate(const RegionConfig& cfg, const QuadratureConfig& quad) {
    return schwinger_region_rate_estimate(cfg, quad).value;
}

double schwinger_reference_rate(double mass, double epsilon, const UnitSystem& units) {
    if (mass < 0.0) throw DomainError("schwinger_reference_rate: mass must be >= 0");
    if (!(epsilon > 0.0)) throw DomainError("schwinger_reference_rate: epsilon must be > 0");
    const double c = units.v_f;
    const double e_eps = units.e_charge * epsilon;
    const double prefactor = std::pow(e_eps, 1.5) /
                             (4.0 * std::numbers::pi * std::numbers::pi *
                              std::pow(units.hbar, 1.5) * std::sqrt(c));
    const double exponent = -std::numbers::pi * mass * mass * c * c * c / (e_eps * units.hbar);
    return prefactor * std::exp(exponent);
}

double schwinger_asymptotic_rate(double epsilon, const UnitSystem& units) {
    return schwinger_reference_rate(0.0, epsilon, units) * beta_function(0.5, 0.75) / 4.0;
}

CurrentResult current(double epsilon, double t_bal, const UnitSystem& units,
                      const QuadratureConfig& quad) {
    const RegionConfig cfg = make_region_config(units, epsilon, t_bal);
    QuadratureConfig o_quad = quad;
    QuadratureConfig s_quad = quad;
    if (quad.method != QuadMethod::MonteCarlo) {
        o_quad.method = QuadMethod::AdaptivePolar;
        s_quad.method = QuadMethod::CartesianStrip;
    }

    CurrentResult r;
    r.epsilon = epsilon;
    r.t_bal = t_bal;
    r.t_c = cfg.t_c;
    r.power_O = quasi_ohmic_power(cfg, o_quad);
    r.sigma_O = r.power_O / (epsilon * epsilon);
    r.j_quasi = r.sigma_O * epsilon;
    r.rate_S = t_bal > cfg.t_c ? schwinger_region_rate(cfg, s_quad) : 0.0;
    r.carrier_density = r.rate_S * t_bal;
    r.j_schwinger = units.e_charge * r.carrier_density * units.v_f;
    r.j_total = r.j_quasi + r.j_schwinger;
    const double ratio = t_bal / cfg.t_c;
    r.regime = ratio < 0.3 ? "quasi-ohmic" : (ratio > 3.0 ? "schwinger" : "crossover");
    r.o_region_extended = t_bal > cfg.t_c;
    return r;
}

std::vector<CurrentResult> sweep(std::span<const double> eps_grid,
                                 std::span<const double> tbal_grid, const UnitSystem& units,
                                 const QuadratureConfig& quad, int threads) {
    if (eps_grid.empty() || tbal_grid.empty()) throw DomainError("sweep: grids must be nonempty");
    for (double e : eps_grid)
        if (!(e > 0.0)) throw DomainError("sweep: eps grid values must be > 0");
    for (double t : tbal_grid)
        if (!(t > 0.0)) throw DomainError("sweep: t_bal grid values must be > 0");
    if (threads < 1) throw DomainError("sweep: threads must be >= 1");

    const std::size_t n_cells = eps_grid.size() * tbal_grid.size();
    std::vector<CurrentResult> rows(n_cells);
    auto run_cell = [&](std::size_t i) {
        const double eps = eps_grid[i / tbal_grid.size()];
        const double tb = tbal_grid[i % tbal_grid.size()];
        try {
            rows[i] = current(eps, tb, units, quad);
        } catch (const ConvergenceError& e) {
            rows[i].epsilon = eps;
            rows[i].t_bal = tb;
            rows[i].t_c = crossover_time(units, eps);
            rows[i].regime = "error";
            rows[i].error_message = std::string("convergence: ") + e.what();
            const double nan = std::numeric_limits<double>::quiet_NaN();
            rows[i].power_O = rows[i].sigma_O = rows[i].rate_S = nan;
            rows[i].carrier_density = rows[i].j_quasi = rows[i].j_schwinger = rows[i].j_total = nan;
        } catch (const DomainError& e) {
            rows[i].epsilon = eps;
            rows[i].t_bal = tb;
            rows[i].t_c = crossover_time(units, eps);
            rows[i].regime = "error";
            rows[i].error_message = std::string("domain: ") + e.what();
            const double nan = std::numeric_limits<double>::quiet_NaN();
            rows[i].power_O = rows[i].sigma_O = rows[i].rate_S = nan;
            rows[i].carrier_density = rows[i].j_quasi = rows[i].j_schwinger = rows[i].j_total = nan;
        }
    };

    if (threads == 1 || n_cells < 2) {
        for (std::size_t i = 0; i < n_cells; ++i) run_cell(i);
    } else {
        const int n_workers = std::min<std::size_t>(threads, n_cells);
        std::vector<std::thread> pool;
        pool.reserve(n_workers);
        for (int w = 0; w < n_workers; ++w)
            pool.emplace_back([&, w] {
                for (std::size_t i = w; i < n_cells; i += n_workers) run_cell(i);
            });
        for (auto& th : pool) th.join();
    }
    return rows;
}

std::vector<double> linear_grid(double lo, double hi, int steps) {
    if (steps < 1) throw DomainError("linear_grid: steps must be >= 1");
    if (steps == 1) return {lo};
    std::vector<double> g(steps);
    for (int i = 0; i < steps; ++i) g[i] = lo + (hi - lo) * i / (steps - 1);
    return g;
}

std::vector<double> geometric_grid(double lo, double hi, int steps) {
    if (steps < 1) throw DomainError("geometric_grid: steps must be >= 1");
    if (!(lo > 0.0) || !(hi > 0.0)) throw DomainError("geometric_grid: bounds must be > 0");
    if (steps == 1) return {lo};
    std::vector<double> g(steps);
    const double ratio = hi / lo;
    for (int i = 0; i < steps; ++i)
        g[i] = lo * std::pow(ratio, static_cast<double>(i) / (steps - 1));
    return g;
}

}  // namespace gwv
