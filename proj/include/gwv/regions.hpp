#pragma once

#include <vector>

#include "gwv/spinor.hpp"
#include "gwv/units.hpp"

namespace gwv {

// Momentum-space regions feeding the current integrals:
//   V: p_x^2 (p_x^2 + p_y^2) <= k_V^2,  k_V = e*eps*hbar/(4 v_f)
//      (virtual-particle candidates; uncertainty products taken as exact,
//       delta_E*delta_t = hbar and delta_x*delta_p_x = hbar)
//   B: |p| <= r_B = e*eps*t_bal/2          (ballistic reachability)
//   F: |p| <= r_F = hbar/(2 v_f t_bal)     (ballistic energy fluctuation)
// Identity r_B * r_F = k_V links the three; r_B = r_F exactly at t_bal = t_c.
struct RegionConfig {
    UnitSystem units;
    double epsilon = 1.0;
    double t_bal = 1.0;
    double k_V = 0.0;
    double r_B = 0.0;
    double r_F = 0.0;
    double t_c = 0.0;
};

RegionConfig make_region_config(const UnitSystem& units, double epsilon, double t_bal);

enum class RegionClass { O, S, None };

struct RegionLabel {
    bool in_V = false;
    bool in_B = false;
    bool in_F = false;
    RegionClass klass = RegionClass::None;
};

// Boundaries count as inside (<=). O/S are assigned on the half-plane
// p_x >= 0 only: O = V ∩ B ∩ F, S = V ∩ B \ F.
RegionLabel classify(MomentumPoint p, const RegionConfig& cfg);

// The two derivations of the V predicate, kept as written for the duality
// check. Both require p_x >= 0.
bool in_V_by_impulse_time(MomentumPoint p, const RegionConfig& cfg);  // Delta t <= hbar/(2E)
bool in_V_by_work_space(MomentumPoint p, const RegionConfig& cfg);    // Delta x <= hbar/(2 p_x)

// Max |p_y| on the V boundary at given p_x, sqrt(k_V^2/p_x^2 - p_x^2).
// Domain: 0 < p_x <= sqrt(k_V).
double v_boundary(double px, const RegionConfig& cfg);

enum class BoundaryCurve { V, B, F };

struct BoundaryPoint {
    double px;
    double py;
    BoundaryCurve curve;
};

// n points per curve, suitable for plotting: the V curve on p_x > 0 clipped
// at r = 3*sqrt(k_V), then the B and F circles starting at (r, 0).
std::vector<BoundaryPoint> sample_boundaries(const RegionConfig& cfg, int n);

const char* to_string(RegionClass c);
const char* to_string(BoundaryCurve c);

}  // namespace gwv
