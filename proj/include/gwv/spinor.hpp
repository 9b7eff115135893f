#pragma once

#include <array>
#include <complex>
#include <span>
#include <vector>

#include "gwv/units.hpp"

namespace gwv {

struct MomentumPoint {
    double px = 0.0;
    double py = 0.0;
};

double momentum_norm(MomentumPoint p);
double momentum_angle(MomentumPoint p);  // atan2(py, px), full quadrant
double energy(MomentumPoint p, const UnitSystem& units);  // E = v_f * |p|

// Chirality |±E> at momentum angle theta:
//   (e^{-i theta/2}, band * e^{i theta/2}) / sqrt(2),
// band = +1 conduction, -1 valence. The global phase is fixed by this form.
struct ChiralitySpinor {
    double theta = 0.0;
    int band = +1;
    std::array<std::complex<double>, 2> components{};
};

ChiralitySpinor make_spinor(double theta, int band);

enum class Pauli { X, Y, Z };

// <post|pre>
std::complex<double> overlap(const ChiralitySpinor& pre, const ChiralitySpinor& post);

// <post|O|pre> / <post|pre> by direct spinor algebra. This is the brute-force
// oracle for the closed forms below. Throws SingularPostselectionError when
// |<post|pre>| <= tol.
std::complex<double> weak_value(const ChiralitySpinor& pre, const ChiralitySpinor& post,
                                Pauli observable, double tol = 1e-12);

// Weak values of the velocity operator components under pre-selection in the
// negative-energy chirality at theta_pre and post-selection in the
// positive-energy chirality at theta_post. sigma_x_w and sigma_y_w are real
// for such selections; sigma_z_w is purely imaginary (i*cot of the half
// angle difference) and is kept complex.
struct WeakVelocity {
    double sigma_x_w = 0.0;
    double sigma_y_w = 0.0;
    std::complex<double> sigma_z_w{};
    std::complex<double> overlap{};
};

// Closed forms
//   sigma_x_w =  sin[(theta+theta')/2] / sin[(theta-theta')/2]
//   sigma_y_w = -cos[(theta+theta')/2] / sin[(theta-theta')/2]
// with theta = theta_pre (valence), theta' = theta_post (conduction).
WeakVelocity weak_value_closed_form(double theta_pre, double theta_post);

// Applies the selection rule theta_post + theta_pre = ±pi (zero y group
// velocity, p'_x = p_x and E' = E) for the final momentum p with p_x > 0:
//   sigma_x_w = |p| / p_x = 1 / cos(theta_post) >= 1.
WeakVelocity selected_weak_velocity(MomentumPoint p);

// v_f * sigma_x_w of the selected transition.
double selected_group_velocity(MomentumPoint p, const UnitSystem& units);

// Exact evolution exp(-i v_f (sigma_x p_x + sigma_y p_y) t / hbar) |state>
// via the axis-angle form of the 2x2 unitary.
std::array<std::complex<double>, 2> evolve_exact(const ChiralitySpinor& state, MomentumPoint p,
                                                 double t, const UnitSystem& units);

struct PropagatorSample {
    double t;
    double abs_error;
};

// For each t: |<post|U(t)|pre> - <post|pre> exp(-i v_f (w_x p_x + w_y p_y) t / hbar)|.
// The remainder of the factorized weak-value form is O(t^2).
std::vector<PropagatorSample> verify_weak_propagator(MomentumPoint p, double theta_pre,
                                                     double theta_post,
                                                     std::span<const double> times,
                                                     const UnitSystem& units);

}  // namespace gwv
