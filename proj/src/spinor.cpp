#include "gwv/spinor.hpp"

#include <cmath>

#include "gwv/errors.hpp"

namespace gwv {

namespace {

constexpr std::complex<double> kI{0.0, 1.0};

std::array<std::complex<double>, 2> apply_pauli(Pauli o,
                                                const std::array<std::complex<double>, 2>& v) {
    switch (o) {
        case Pauli::X: return {v[1], v[0]};
        case Pauli::Y: return {-kI * v[1], kI * v[0]};
        case Pauli::Z: return {v[0], -v[1]};
    }
    throw DomainError("unknown Pauli observable");
}

std::complex<double> inner(const std::array<std::complex<double>, 2>& bra,
                           const std::array<std::complex<double>, 2>& ket) {
    return std::conj(bra[0]) * ket[0] + std::conj(bra[1]) * ket[1];
}

}  // namespace

double momentum_norm(MomentumPoint p) { return std::hypot(p.px, p.py); }

double momentum_angle(MomentumPoint p) { return std::atan2(p.py, p.px); }

double energy(MomentumPoint p, const UnitSystem& units) { return units.v_f * momentum_norm(p); }

ChiralitySpinor make_spinor(double theta, int band) {
    if (band != +1 && band != -1) throw DomainError("make_spinor: band must be +1 or -1");
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    ChiralitySpinor s;
    s.theta = theta;
    s.band = band;
    s.components = {inv_sqrt2 * std::exp(-kI * (theta / 2.0)),
                    static_cast<double>(band) * inv_sqrt2 * std::exp(kI * (theta / 2.0))};
    return s;
}

std::complex<double> overlap(const ChiralitySpinor& pre, const ChiralitySpinor& post) {
    return inner(post.components, pre.components);
}

std::complex<double> weak_value(const ChiralitySpinor& pre, const ChiralitySpinor& post,
                                Pauli observable, double tol) {
    const std::complex<double> denom = overlap(pre, post);
    if (std::abs(denom) <= tol)
        throw SingularPostselectionError("weak_value: pre/post-selection is (near-)orthogonal");
    return inner(post.components, apply_pauli(observable, pre.components)) / denom;
}

WeakVelocity weak_value_closed_form(double theta_pre, double theta_post) {
    const double half_diff = 0.5 * (theta_pre - theta_post);
    const double half_sum = 0.5 * (theta_pre + theta_post);
    const double s = std::sin(half_diff);
    if (std::abs(s) <= 1e-12)
        throw SingularPostselectionError(
            "weak_value_closed_form: theta_pre == theta_post (mod 2*pi)");
    WeakVelocity w;
    w.sigma_x_w = std::sin(half_sum) / s;
    w.sigma_y_w = -std::cos(half_sum) / s;
    w.sigma_z_w = kI * (std::cos(half_diff) / s);
    w.overlap = -kI * s;  // <theta_post,+|theta_pre,->
    return w;
}

WeakVelocity selected_weak_velocity(MomentumPoint p) {
    if (!(p.px > 0.0))
        throw NoTransitionError(
            "selected_weak_velocity: a +x initial group velocity requires p_x > 0");
    const double theta_post = std::atan2(p.py, p.px);
    const double theta_pre = std::atan2(p.py, -p.px);
    WeakVelocity w;
    w.sigma_x_w = momentum_norm(p) / p.px;  // 1/cos(theta_post), >= 1
    w.sigma_y_w = 0.0;
    w.sigma_z_w = kI * (p.py / p.px);       // i*tan(theta_post) under the selection rule
    w.overlap = -kI * std::sin(0.5 * (theta_pre - theta_post));
    return w;
}

double selected_group_velocity(MomentumPoint p, const UnitSystem& units) {
    return units.v_f * selected_weak_velocity(p).sigma_x_w;
}

std::array<std::complex<double>, 2> evolve_exact(const ChiralitySpinor& state, MomentumPoint p,
                                                 double t, const UnitSystem& units) {
    const double pn = momentum_norm(p);
    if (pn == 0.0) return state.components;  // H = 0
    const double phase = units.v_f * pn * t / units.hbar;  // E t / hbar
    const double c = std::cos(phase);
    const double s = std::sin(phase);
    const double nx = p.px / pn;
    const double ny = p.py / pn;
    // U = cos(phi) I - i sin(phi) (n.sigma), n.sigma = [[0, nx - i ny], [nx + i ny, 0]]
    const std::complex<double> n_minus{nx, -ny};
    const std::complex<double> n_plus{nx, ny};
    const auto& v = state.components;
    return {c * v[0] - kI * s * (n_minus * v[1]), c * v[1] - kI * s * (n_plus * v[0])};
}

std::vector<PropagatorSample> verify_weak_propagator(MomentumPoint p, double theta_pre,
                                                     double theta_post,
                                                     std::span<const double> times,
                                                     const UnitSystem& units) {
    for (double t : times)
        if (!(t >= 0.0)) throw DomainError("verify_weak_propagator: times must be >= 0");
    const ChiralitySpinor pre = make_spinor(theta_pre, -1);
    const ChiralitySpinor post = make_spinor(theta_post, +1);
    const std::complex<double> ovl = overlap(pre, post);
    if (std::abs(ovl) <= 1e-12)
        throw SingularPostselectionError("verify_weak_propagator: singular post-selection");
    const std::complex<double> wx = weak_value(pre, post, Pauli::X);
    const std::complex<double> wy = weak_value(pre, post, Pauli::Y);

    std::vector<PropagatorSample> out;
    out.reserve(times.size());
    for (double t : times) {
        const auto evolved = evolve_exact(pre, p, t, units);
        const std::complex<double> exact = inner(post.components, evolved);
        const std::complex<double> arg = -kI * (units.v_f * t / units.hbar) * (wx * p.px + wy * p.py);
        const std::complex<double> factorized = ovl * std::exp(arg);
        out.push_back({t, std::abs(exact - factorized)});
    }
    return out;
}

}  // namespace gwv
