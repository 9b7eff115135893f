#pragma once

#include "gwv/spinor.hpp"
#include "gwv/units.hpp"

namespace gwv {

// A creation transition (-E, (-p_x, p_y)) -> (+E, (p_x, p_y)) in a field
// epsilon along +x. p is the final momentum; requires p_x > 0.
struct TransitionSpec {
    MomentumPoint p;
    UnitSystem units;
    double epsilon;
};

struct TransitionKinematics {
    double delta_E;   // 2E, work done by the field
    double delta_px;  // 2 p_x, impulse
    double delta_t;   // delta_px / (e * epsilon)
    double delta_x;   // delta_E / (e * epsilon)
    double v_g;       // delta_x / delta_t = delta_E / delta_px
    double T;         // transition probability cos^2(theta_post)
};

TransitionKinematics kinematics(const TransitionSpec& spec);

// T = p_x^2 / (p_x^2 + p_y^2) for p_x > 0; 0 for p_x <= 0 (no +x-velocity
// initial state), so region integrations can use it as a weight on the full
// plane. Undefined at |p| = 0.
double transition_probability(MomentumPoint p);

// |T * v_f * sigma_x_w - v_f * cos(theta_post)|; vanishes identically.
double check_flux_consistency(MomentumPoint p, const UnitSystem& units);

}  // namespace gwv
