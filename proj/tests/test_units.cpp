#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "gwv/errors.hpp"
#include "gwv/units.hpp"

using namespace gwv;

TEST_CASE("natural units preset") {
    const UnitSystem u = natural_units();
    CHECK(u.hbar == 1.0);
    CHECK(u.e_charge == 1.0);
    CHECK(u.v_f == 1.0);
    CHECK(u.planck_h == doctest::Approx(2.0 * std::numbers::pi).epsilon(1e-15));
    CHECK(u.planck_h / u.hbar == doctest::Approx(2.0 * std::numbers::pi).epsilon(1e-15));
}

TEST_CASE("si graphene preset carries CODATA constants") {
    const UnitSystem u = si_graphene_units();
    CHECK(u.hbar == 1.054571817e-34);
    CHECK(u.e_charge == 1.602176634e-19);
    CHECK(u.v_f == 1.0e6);
    CHECK(u.planck_h == doctest::Approx(2.0 * std::numbers::pi * u.hbar).epsilon(1e-15));
}

TEST_CASE("make_units rejects non-positive constants") {
    CHECK_THROWS_AS(make_units(0.0, 1.0, 1.0), DomainError);
    CHECK_THROWS_AS(make_units(1.0, -1.0, 1.0), DomainError);
    CHECK_THROWS_AS(make_units(1.0, 1.0, 0.0), DomainError);
}

TEST_CASE("field config validation") {
    CHECK_THROWS_AS(make_field_config(0.0, 1.0), DomainError);
    CHECK_THROWS_AS(make_field_config(1.0, -2.0), DomainError);
    const FieldConfig f = make_field_config(2.0, 3.0);
    CHECK(f.epsilon == 2.0);
    CHECK(f.t_bal == 3.0);
}

TEST_CASE("crossover time") {
    const UnitSystem u = natural_units();
    CHECK(crossover_time(u, 1.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(crossover_time(u, 4.0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK_THROWS_AS(crossover_time(u, 0.0), DomainError);
    CHECK_THROWS_AS(crossover_time(u, -1.0), DomainError);
}

TEST_CASE("crossover time scales as eps^(-1/2)") {
    const UnitSystem u = si_graphene_units();
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> log_eps(-3.0, 6.0);
    const double reference = crossover_time(u, 1.0);
    for (int i = 0; i < 100; ++i) {
        const double eps = std::pow(10.0, log_eps(rng));
        const double scaled = crossover_time(u, eps) * std::sqrt(eps);
        CHECK(scaled == doctest::Approx(reference).epsilon(1e-12));
    }
}
