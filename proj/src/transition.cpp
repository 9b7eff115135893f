#include "gwv/transition.hpp"

#include <cmath>

#include "gwv/errors.hpp"

namespace gwv {

TransitionKinematics kinematics(const TransitionSpec& spec) {
    if (!(spec.epsilon > 0.0)) throw DomainError("kinematics: epsilon must be > 0");
    if (!(spec.p.px > 0.0)) throw NoTransitionError("kinematics: transition requires p_x > 0");
    const double force = spec.units.e_charge * spec.epsilon;
    TransitionKinematics k;
    k.delta_E = 2.0 * energy(spec.p, spec.units);
    k.delta_px = 2.0 * spec.p.px;
    k.delta_t = k.delta_px / force;
    k.delta_x = k.delta_E / force;
    k.v_g = k.delta_E / k.delta_px;
    k.T = transition_probability(spec.p);
    return k;
}

double transition_probability(MomentumPoint p) {
    const double n2 = p.px * p.px + p.py * p.py;
    if (n2 == 0.0)
        throw DomainError("transition_probability: direction undefined at the Dirac point");
    if (p.px <= 0.0) return 0.0;
    return p.px * p.px / n2;
}

double check_flux_consistency(MomentumPoint p, const UnitSystem& units) {
    const WeakVelocity w = selected_weak_velocity(p);
    const double T = transition_probability(p);
    const double cos_theta_post = p.px / momentum_norm(p);
    return std::abs(T * units.v_f * w.sigma_x_w - units.v_f * cos_theta_post);
}

}  // namespace gwv
