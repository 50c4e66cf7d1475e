#include <doctest.h>

#include <cmath>

#include "genbath/error.hpp"
#include "genbath/master_equation.hpp"
#include "genbath/states.hpp"
#include "random_ops.hpp"

using namespace genbath;

TEST_CASE("coherent precession of the ge coherence") {
    const double omega = 3.0;
    const MasterEquation me(ScheduledOperator(0.5 * omega * qubit::sigma_z()), {});
    Vector plus(2);
    plus << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
    const DensityMatrix rho = DensityMatrix::pure(qubit::space(), plus);
    const Operator d = rhs(me, rho, 0.0);
    // -i [w sz / 2, rho]_{ge} = -i (w/2)(-1 - 1) rho_ge = +i w rho_ge
    const cplx expected = cplx(0.0, omega) * rho.matrix()(0, 1);
    CHECK(std::abs(d(0, 1) - expected) < 1e-15);
    CHECK(std::abs(d(0, 1)) == doctest::Approx(omega / 2.0));
    CHECK(std::abs(d(0, 0)) < 1e-15);
    CHECK(std::abs(d(1, 1)) < 1e-15);
}

TEST_CASE("single decay channel on the excited state") {
    const double gamma = 0.7;
    const MasterEquation me(ScheduledOperator(Operator::zero(qubit::space())),
                            {Channel(qubit::sigma_minus(), gamma)});
    const Operator d = rhs(me, DensityMatrix(qubit::excited_projector()), 0.0);
    CHECK(max_abs_diff(d, gamma * (qubit::ground_projector() - qubit::excited_projector())) < 1e-15);
    CHECK(me.is_time_independent());
}

TEST_CASE("stationary state of a thermal qubit") {
    const double omega = 2.0, gamma = 0.5, temperature = 1.3;
    const Operator h = 0.5 * omega * qubit::sigma_z();
    std::vector<ScheduledChannel> channels;
    for (const auto& c : thermal_qubit_channels(omega, gamma, temperature)) {
        channels.emplace_back(c);
    }
    const MasterEquation me(ScheduledOperator(h), channels);
    CHECK(max_abs(rhs(me, thermal_state(h, temperature), 0.0).matrix()) < 1e-12);
}

TEST_CASE("scheduled channels with a single phase act as static ones") {
    const double gamma = 1.2;
    ScheduledOperator rotating(qubit::space());
    rotating.add_term(qubit::sigma_minus(), 1.0, 5.0);
    const MasterEquation a(ScheduledOperator(Operator::zero(qubit::space())), {ScheduledChannel(rotating, gamma)});
    const MasterEquation b(ScheduledOperator(Operator::zero(qubit::space())), {Channel(qubit::sigma_minus(), gamma)});
    testing::Rng rng(11);
    const DensityMatrix rho = testing::random_density(rng, qubit::space());
    CHECK(max_abs(a.rhs(rho.matrix(), 0.37) - b.rhs(rho.matrix(), 0.37)) < 1e-15);
}

TEST_CASE("multi-phase channels are evaluated at each time") {
    ScheduledOperator jump(qubit::space());
    jump.add_term(qubit::sigma_minus(), 1.0, 1.0);
    jump.add_term(qubit::sigma_plus(), 1.0, -1.0);
    const MasterEquation me(ScheduledOperator(Operator::zero(qubit::space())), {ScheduledChannel(jump, 1.0)});
    CHECK_FALSE(me.is_time_independent());
    testing::Rng rng(12);
    const DensityMatrix rho = testing::random_density(rng, qubit::space());
    for (double t : {0.0, 0.4, 2.0}) {
        const Matrix c = jump.evaluate_matrix(t);
        CHECK(max_abs(me.rhs(rho.matrix(), t) - dissipator_apply(c, rho.matrix())) < 1e-14);
    }
}

TEST_CASE("channels on the wrong space are rejected") {
    CHECK_THROWS_AS(MasterEquation(ScheduledOperator(Operator::zero(qubit::space())),
                                   {Channel(boson::annihilation(3), 1.0)}),
                    SpaceMismatch);
}
