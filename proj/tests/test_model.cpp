#include "doctest.h"

#include "deltapol/model.hpp"
#include "deltapol/quadrature.hpp"

#include <cmath>
#include <limits>

using namespace deltapol;

TEST_CASE("bound state from the coupling") {
    const bound_state s = make_bound_state({1.0});
    CHECK(s.k0 == 1.0);
    CHECK(s.energy == -0.5);
    CHECK(s.binding == 0.5);

    const bound_state s2 = make_bound_state({2.0});
    CHECK(s2.k0 == 2.0);
    CHECK(s2.energy == -2.0);
    CHECK(s2.binding == 2.0);
}

TEST_CASE("coupling must be positive and finite") {
    CHECK_THROWS_AS(make_bound_state({0.0}), invalid_params);
    CHECK_THROWS_AS(make_bound_state({-1.0}), invalid_params);
    CHECK_THROWS_AS(make_bound_state({std::numeric_limits<double>::quiet_NaN()}),
                    invalid_params);
    CHECK_THROWS_AS(make_bound_state({std::numeric_limits<double>::infinity()}),
                    invalid_params);
}

TEST_CASE("wavefunction peak, parity and normalization") {
    for (const double g : {0.5, 1.0, 2.0}) {
        const bound_state s = make_bound_state({g});
        CHECK(bound_wavefunction(s, 0.0) == doctest::Approx(std::sqrt(g)).epsilon(1e-15));
        for (const double x : {0.3, 1.7, 4.2})
            CHECK(bound_wavefunction(s, x) == bound_wavefunction(s, -x));

        quadrature_config cfg;
        const double span = 40.0 / g;
        auto density = [&](double x) {
            const double p = bound_wavefunction(s, x);
            return p * p;
        };
        const double norm = integrate(density, -span, span, cfg).value;
        CHECK(std::abs(norm - 1.0) < 1e-12);
    }
}

TEST_CASE("branch kinematics: momenta on each side of threshold") {
    const bound_state s = make_bound_state({1.0});

    const auto at_zero = make_branch_kinematics(s, 0.0, frequency_sign::plus);
    CHECK(at_zero.channel == region::below);
    CHECK(at_zero.momentum == doctest::Approx(1.0).epsilon(1e-15));

    const auto at_thr = make_branch_kinematics(s, s.binding, frequency_sign::plus);
    CHECK(at_thr.channel == region::below);
    CHECK(at_thr.momentum == 0.0);

    const auto below = make_branch_kinematics(s, 0.3, frequency_sign::plus);
    CHECK(below.channel == region::below);
    CHECK(below.momentum * below.momentum == doctest::Approx(0.4).epsilon(1e-15));

    const auto above = make_branch_kinematics(s, 0.75, frequency_sign::plus);
    CHECK(above.channel == region::above);
    CHECK(above.momentum * above.momentum == doctest::Approx(0.5).epsilon(1e-15));

    const auto minus = make_branch_kinematics(s, 0.5, frequency_sign::minus);
    CHECK(minus.channel == region::negative);
    CHECK(minus.momentum * minus.momentum == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("branch kinematics: exactly one channel, all frequencies") {
    const bound_state s = make_bound_state({1.3});
    for (int i = 0; i < 200; ++i) {
        const double omega = 10.0 * i / 199.0;
        const auto plus = make_branch_kinematics(s, omega, frequency_sign::plus);
        CHECK(plus.channel == (omega <= s.binding ? region::below : region::above));
        CHECK(plus.momentum >= 0.0);
        CHECK(std::isfinite(plus.momentum));
        const auto minus = make_branch_kinematics(s, omega, frequency_sign::minus);
        CHECK(minus.channel == region::negative);
        CHECK(minus.momentum >= std::sqrt(2.0 * s.binding) * (1.0 - 1e-15));
    }
}

TEST_CASE("branch kinematics rejects bad frequencies") {
    const bound_state s = make_bound_state({1.0});
    CHECK_THROWS_AS(make_branch_kinematics(s, -0.1, frequency_sign::plus),
                    deltapol::domain_error);
    CHECK_THROWS_AS(
        make_branch_kinematics(s, std::numeric_limits<double>::quiet_NaN(),
                               frequency_sign::minus),
        deltapol::domain_error);
}
