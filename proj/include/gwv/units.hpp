#pragma once

#include <numbers>

#include "gwv/errors.hpp"

namespace gwv {

// Physical constants consumed by every formula. All values strictly positive;
// planck_h is kept equal to 2*pi*hbar by the factories. Immutable value type,
// safe to share across threads.
struct UnitSystem {
    double hbar = 1.0;
    double e_charge = 1.0;
    double v_f = 1.0;
    double planck_h = 2.0 * std::numbers::pi;
};

// Uniform electric field of strength epsilon along +x plus the ballistic time.
struct FieldConfig {
    double epsilon;
    double t_bal;
};

UnitSystem make_units(double hbar, double e_charge, double v_f);

// hbar = e = v_f = 1; the default for all verification work.
UnitSystem natural_units();

// CODATA SI constants with the conventional graphene Fermi velocity
// v_f = 1.0e6 m/s (an external convention, overridable via configuration).
UnitSystem si_graphene_units();

FieldConfig make_field_config(double epsilon, double t_bal);

// t_c = sqrt(hbar / (e * epsilon * v_f)): the ballistic-time scale separating
// the quasi-Ohmic and Schwinger regimes.
double crossover_time(const UnitSystem& units, double epsilon);

}  // namespace gwv
