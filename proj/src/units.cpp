#include "gwv/units.hpp"

#include <cmath>

namespace gwv {

UnitSystem make_units(double hbar, double e_charge, double v_f) {
    if (!(hbar > 0.0) || !(e_charge > 0.0) || !(v_f > 0.0))
        throw DomainError("unit constants must be strictly positive");
    UnitSystem u;
    u.hbar = hbar;
    u.e_charge = e_charge;
    u.v_f = v_f;
    u.planck_h = 2.0 * std::numbers::pi * hbar;
    return u;
}

UnitSystem natural_units() { return make_units(1.0, 1.0, 1.0); }

UnitSystem si_graphene_units() {
    // CODATA 2018: hbar [J s], e [C]; v_f = 1.0e6 m/s by convention.
    return make_units(1.054571817e-34, 1.602176634e-19, 1.0e6);
}

FieldConfig make_field_config(double epsilon, double t_bal) {
    if (!(epsilon > 0.0)) throw DomainError("field strength epsilon must be > 0");
    if (!(t_bal > 0.0)) throw DomainError("ballistic time t_bal must be > 0");
    return {epsilon, t_bal};
}

double crossover_time(const UnitSystem& units, double epsilon) {
    if (!(epsilon > 0.0)) throw DomainError("crossover_time: epsilon must be > 0");
    return std::sqrt(units.hbar / (units.e_charge * epsilon * units.v_f));
}

}  // namespace gwv
