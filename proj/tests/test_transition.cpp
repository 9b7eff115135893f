#include <doctest.h>

#include <cmath>
#include <random>

#include "gwv/errors.hpp"
#include "gwv/transition.hpp"

using namespace gwv;

TEST_CASE("on-axis kinematics, natural units") {
    const UnitSystem u = natural_units();
    const TransitionKinematics k = kinematics({{1.0, 0.0}, u, 1.0});
    CHECK(k.delta_E == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(k.delta_px == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(k.delta_t == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(k.delta_x == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(k.v_g == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(k.T == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("diagonal kinematics") {
    const UnitSystem u = natural_units();
    const TransitionKinematics k = kinematics({{1.0, 1.0}, u, 1.0});
    CHECK(k.v_g == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
    CHECK(k.T == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("doubling the field halves transit time and distance") {
    const UnitSystem u = natural_units();
    const TransitionKinematics k = kinematics({{1.0, 0.0}, u, 2.0});
    CHECK(k.delta_t == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(k.delta_x == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("kinematics error paths") {
    const UnitSystem u = natural_units();
    CHECK_THROWS_AS(kinematics({{0.0, 1.0}, u, 1.0}), NoTransitionError);
    CHECK_THROWS_AS(kinematics({{-1.0, 1.0}, u, 1.0}), NoTransitionError);
    CHECK_THROWS_AS(kinematics({{1.0, 0.0}, u, 0.0}), DomainError);
    CHECK_THROWS_AS(kinematics({{1.0, 0.0}, u, -1.0}), DomainError);
}

TEST_CASE("transition probability") {
    CHECK(transition_probability({1.0, 0.0}) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(transition_probability({1.0, 1.0}) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(transition_probability({0.0, 1.0}) == 0.0);
    CHECK(transition_probability({-1.0, 1.0}) == 0.0);
    CHECK_THROWS_AS(transition_probability({0.0, 0.0}), DomainError);
}

TEST_CASE("T depends only on the direction") {
    std::mt19937_64 rng(37);
    std::uniform_real_distribution<double> px(0.01, 5.0);
    std::uniform_real_distribution<double> py(-5.0, 5.0);
    std::uniform_real_distribution<double> lambda(0.1, 50.0);
    for (int i = 0; i < 5000; ++i) {
        const MomentumPoint p{px(rng), py(rng)};
        const double scale = lambda(rng);
        const MomentumPoint q{scale * p.px, scale * p.py};
        CHECK(std::abs(transition_probability(p) - transition_probability(q)) < 1e-12);
    }
}

TEST_CASE("flux consistency residual vanishes") {
    const UnitSystem u = natural_units();
    CHECK(check_flux_consistency({1.0, 0.0}, u) == 0.0);
    CHECK(check_flux_consistency({1.0, 1.0}, u) < 1e-12);
    CHECK(check_flux_consistency({1.0, 5.0}, u) < 1e-12);

    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> px(0.01, 5.0);
    std::uniform_real_distribution<double> py(-5.0, 5.0);
    for (int i = 0; i < 10000; ++i) {
        CHECK(check_flux_consistency({px(rng), py(rng)}, u) < 1e-12);
    }
}

TEST_CASE("group velocity equals v_f times the weak value") {
    for (const UnitSystem& u : {natural_units(), si_graphene_units()}) {
        std::mt19937_64 rng(43);
        std::uniform_real_distribution<double> px(0.01, 5.0);
        std::uniform_real_distribution<double> py(-5.0, 5.0);
        for (int i = 0; i < 10000; ++i) {
            const MomentumPoint p{px(rng), py(rng)};
            const TransitionKinematics k = kinematics({p, u, 1.0});
            const double wv = selected_group_velocity(p, u);
            CHECK(std::abs(k.v_g - wv) <= 1e-12 * u.v_f * std::max(1.0, k.v_g / u.v_f));
        }
    }
}

TEST_CASE("work-impulse bookkeeping is consistent") {
    const UnitSystem u = natural_units();
    std::mt19937_64 rng(47);
    std::uniform_real_distribution<double> px(0.01, 5.0);
    std::uniform_real_distribution<double> py(-5.0, 5.0);
    std::uniform_real_distribution<double> eps(0.1, 10.0);
    for (int i = 0; i < 5000; ++i) {
        const double e = eps(rng);
        const TransitionKinematics k = kinematics({{px(rng), py(rng)}, u, e});
        const double force = u.e_charge * e;
        CHECK(k.delta_E / k.delta_x == doctest::Approx(force).epsilon(1e-14));
        CHECK(k.delta_px / k.delta_t == doctest::Approx(force).epsilon(1e-14));
        CHECK(k.v_g == doctest::Approx(k.delta_x / k.delta_t).epsilon(1e-14));
        CHECK(k.T >= 0.0);
        CHECK(k.T <= 1.0);
    }
}
