#include "gwv/regions.hpp"

#include <cmath>

#include "gwv/errors.hpp"

namespace gwv {

RegionConfig make_region_config(const UnitSystem& units, double epsilon, double t_bal) {
    if (!(epsilon > 0.0)) throw DomainError("region config: epsilon must be > 0");
    if (!(t_bal > 0.0)) throw DomainError("region config: t_bal must be > 0");
    RegionConfig cfg;
    cfg.units = units;
    cfg.epsilon = epsilon;
    cfg.t_bal = t_bal;
    cfg.k_V = units.e_charge * epsilon * units.hbar / (4.0 * units.v_f);
    cfg.r_B = 0.5 * units.e_charge * epsilon * t_bal;
    cfg.r_F = units.hbar / (2.0 * units.v_f * t_bal);
    cfg.t_c = crossover_time(units, epsilon);
    return cfg;
}

RegionLabel classify(MomentumPoint p, const RegionConfig& cfg) {
    const double n2 = p.px * p.px + p.py * p.py;
    RegionLabel l;
    l.in_V = p.px * p.px * n2 <= cfg.k_V * cfg.k_V;
    l.in_B = n2 <= cfg.r_B * cfg.r_B;
    l.in_F = n2 <= cfg.r_F * cfg.r_F;
    if (p.px >= 0.0 && l.in_V && l.in_B)
        l.klass = l.in_F ? RegionClass::O : RegionClass::S;
    return l;
}

bool in_V_by_impulse_time(MomentumPoint p, const RegionConfig& cfg) {
    // impulse 2 p_x within the lifetime hbar/(2E) of the fluctuation
    const double force = cfg.units.e_charge * cfg.epsilon;
    const double transit = 2.0 * p.px / force;
    const double lifetime = cfg.units.hbar / (2.0 * energy(p, cfg.units));
    return transit <= lifetime;
}

bool in_V_by_work_space(MomentumPoint p, const RegionConfig& cfg) {
    // work 2E within the spatial spread hbar/(2 p_x)
    const double force = cfg.units.e_charge * cfg.epsilon;
    const double distance = 2.0 * energy(p, cfg.units) / force;
    const double spread = cfg.units.hbar / (2.0 * p.px);
    return distance <= spread;
}

double v_boundary(double px, const RegionConfig& cfg) {
    const double px_max = std::sqrt(cfg.k_V);
    if (!(px > 0.0) || !(px <= px_max))
        throw DomainError("v_boundary: p_x must lie in (0, sqrt(k_V)]");
    const double ratio = cfg.k_V / px;
    return std::sqrt(std::max(0.0, ratio * ratio - px * px));
}

std::vector<BoundaryPoint> sample_boundaries(const RegionConfig& cfg, int n) {
    if (n < 2) throw DomainError("sample_boundaries: need n >= 2");
    std::vector<BoundaryPoint> out;
    out.reserve(3 * static_cast<std::size_t>(n));

    // V: r(a) = sqrt(k_V / cos a) on p_x >= 0, clipped at r = 3 sqrt(k_V)
    // (cos a >= 1/9); a = 0 gives the pinch point (sqrt(k_V), 0).
    const double a_max = std::acos(1.0 / 9.0);
    for (int i = 0; i < n; ++i) {
        const double a = -a_max + 2.0 * a_max * i / (n - 1);
        const double r = std::sqrt(cfg.k_V / std::cos(a));
        out.push_back({r * std::cos(a), r * std::sin(a), BoundaryCurve::V});
    }
    const double two_pi = 2.0 * std::numbers::pi;
    for (int i = 0; i < n; ++i) {
        const double a = two_pi * i / n;
        out.push_back({cfg.r_B * std::cos(a), cfg.r_B * std::sin(a), BoundaryCurve::B});
    }
    for (int i = 0; i < n; ++i) {
        const double a = two_pi * i / n;
        out.push_back({cfg.r_F * std::cos(a), cfg.r_F * std::sin(a), BoundaryCurve::F});
    }
    return out;
}

const char* to_string(RegionClass c) {
    switch (c) {
        case RegionClass::O: return "O";
        case RegionClass::S: return "S";
        case RegionClass::None: return "none";
    }
    return "none";
}

const char* to_string(BoundaryCurve c) {
    switch (c) {
        case BoundaryCurve::V: return "V";
        case BoundaryCurve::B: return "B";
        case BoundaryCurve::F: return "F";
    }
    return "?";
}

}  // namespace gwv
