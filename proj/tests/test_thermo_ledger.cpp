#include <doctest.h>

#include <cmath>

#include "genbath/amplifier.hpp"
#include "genbath/error.hpp"
#include "genbath/states.hpp"
#include "genbath/thermo_ledger.hpp"
#include "random_ops.hpp"

using namespace genbath;

namespace {

AmplifierModel small_model(Frame frame, std::size_t n = 6) {
    AmplifierConfig cfg;
    cfg.n_fock = n;
    cfg.g = 2.0;
    cfg.frame = frame;
    return build_amplifier(cfg);
}

DensityMatrix product(const Operator& qubit_state, std::size_t fock, std::size_t n) {
    return DensityMatrix(kron(qubit_state, fock_state(fock, n).op()));
}

} // namespace

TEST_CASE("work power vanishes without a drive or for a symmetry") {
    const std::size_t n = 4;
    const GeneralizedBathSpec flipped{0.5 * 3.0 * qubit::sigma_z(), qubit::sigma_x(),
                                      thermal_qubit_channels(3.0, 1.0, 0.0), 0.0};
    const Operator h_ext = 3.0 * boson::number(n);
    testing::Rng rng(71);

    const RepresentationPair idle = build_representations(flipped, h_ext, Operator::zero(HilbertSpace({2, n})), Frame::Lab);
    GeneralizedBathSpec symmetric = flipped;
    symmetric.u = matrix_exp(qubit::sigma_z(), cplx(0.0, 0.8));
    const RepresentationPair sym = build_representations(symmetric, h_ext, amplifier_coupling(n, 1.0), Frame::Lab);

    for (double t : {0.0, 0.5, 1.7}) {
        const DensityMatrix rho = testing::random_density(rng, HilbertSpace({2, n}));
        CHECK(work_power(idle.dv_tilde_dt, rho, t) == 0.0);
        CHECK(std::abs(work_power(sym.dv_tilde_dt, rho, t)) < 1e-13);
    }
}

TEST_CASE("work power on the vacuum product state is zero") {
    const AmplifierModel m = small_model(Frame::Lab);
    const DensityMatrix g0 = product(qubit::ground_projector(), 0, 6);
    CHECK(work_power(m.pair.dv_tilde_dt, g0, 0.0) == 0.0);
    CHECK(work_power(m.pair.dv_tilde_dt, g0, 0.83) == 0.0);
}

TEST_CASE("heat power examples") {
    const double omega = 10.0, gamma = 1.0;
    const AmplifierModel m = small_model(Frame::Rotating);
    const auto& channels = m.pair.thermal.channels();
    const Operator& h = m.pair.h_sys;
    CHECK(std::abs(heat_power(h, channels, product(qubit::ground_projector(), 0, 6), 0.0)) < 1e-15);
    CHECK(std::abs(heat_power(h, channels, product(qubit::excited_projector(), 2, 6), 0.0) + omega * gamma) < 1e-13);
    const Operator half = 0.5 * (qubit::ground_projector() + qubit::excited_projector());
    CHECK(std::abs(heat_power(h, channels, product(half, 1, 6), 0.0) + 0.5 * omega * gamma) < 1e-13);

    testing::Rng rng(72);
    for (int k = 0; k < 20; ++k) {
        const DensityMatrix rho = testing::random_density(rng, h.space());
        const double q = heat_power(h, channels, rho, 0.0);
        CHECK(q <= 0.0);
        CHECK(std::abs(q - amplifier_heat_closed_form(omega, gamma, expectation_real(m.sigma_z, rho))) < 1e-12);
    }

    std::vector<Channel> plain;
    for (const auto& c : m.bath.thermal_channels) {
        plain.emplace_back(kron(c.jump, Operator::identity(boson::space(6))), c.rate);
    }
    const DensityMatrix e2 = product(qubit::excited_projector(), 2, 6);
    CHECK(heat_power(h, plain, e2) == doctest::Approx(-omega * gamma));
}

TEST_CASE("energy flow of a conserved quantity") {
    const AmplifierModel m = small_model(Frame::Lab);
    testing::Rng rng(73);
    const DensityMatrix rho = testing::random_density(rng, m.pair.h_sys.space());
    const ScheduledOperator c(2.5 * Operator::identity(rho.space()));
    for (double t : {0.0, 1.0}) {
        CHECK(std::abs(energy_flow(c, m.pair.thermal, rho, t)) < 1e-13);
        CHECK(std::abs(energy_flow(c, m.pair.generalized, rho, t)) < 1e-13);
    }
}

TEST_CASE("first-law residuals") {
    const double wg = 10.0;
    const FirstLawResiduals ss = first_law_residuals(wg, -0.5 * wg, 0.5 * wg, 0.0);
    CHECK(ss.first_law == 0.0);
    CHECK(ss.cost_identity == 0.0);
    const FirstLawResiduals zero = first_law_residuals(0.0, 0.0, 0.0, 0.0);
    CHECK(zero.first_law == 0.0);
    CHECK(zero.cost_identity == 0.0);
}

TEST_CASE("ledger on the thermal-representation vacuum product is all zero") {
    for (Frame frame : {Frame::Rotating, Frame::Lab}) {
        const AmplifierModel m = small_model(frame);
        const EnergyFlows f = thermal_energy_flows(m.pair, product(qubit::ground_projector(), 0, 6), 0.0);
        CHECK(f.work_power == 0.0);
        CHECK(f.heat_power == 0.0);
        CHECK(std::abs(f.dhext_dt) < 1e-15);
        CHECK(std::abs(f.dhsys_dt) < 1e-15);
        CHECK(f.residual_first_law == doctest::Approx(0.0));
        CHECK(f.residual_cost_identity == doctest::Approx(0.0));
    }
}

TEST_CASE("ledger identities hold for arbitrary states") {
    testing::Rng rng(74);
    for (Frame frame : {Frame::Rotating, Frame::Lab}) {
        const AmplifierModel m = small_model(frame);
        for (double t : {0.0, 0.37, 1.0}) {
            const DensityMatrix rho = testing::random_density(rng, m.pair.h_sys.space());
            const EnergyFlows f = thermal_energy_flows(m.pair, rho, t);
            CHECK(std::abs(f.residual_cost_identity) <= 1e-12);
            CHECK(std::abs(f.residual_first_law) <= 1e-12);
            CHECK(std::abs(f.work_power - 2.0 * f.dhext_dt) <= 1e-12);
        }
    }
}

TEST_CASE("work power agrees between lab and rotating frames") {
    const AmplifierModel lab = small_model(Frame::Lab);
    const AmplifierModel rot = small_model(Frame::Rotating);
    const Operator h0 = lab.pair.h_sys + lab.pair.h_ext;
    testing::Rng rng(75);
    for (double t : {0.0, 0.11, 0.9, 2.4}) {
        const DensityMatrix rho_rot = testing::random_density(rng, h0.space());
        const Operator step = matrix_exp(h0, cplx(0.0, -t));
        const DensityMatrix rho_lab = DensityMatrix::trusted(step * rho_rot.op() * step.adjoint());
        const double w_lab = work_power(lab.pair.dv_tilde_dt, rho_lab, t);
        const double w_rot = work_power(rot.pair.dv_tilde_dt, rho_rot, t);
        CHECK(std::abs(w_lab - w_rot) <= 1e-10);

        const EnergyFlows fl = thermal_energy_flows(lab.pair, rho_lab, t);
        const EnergyFlows fr = thermal_energy_flows(rot.pair, rho_rot, t);
        CHECK(std::abs(fl.heat_power - fr.heat_power) <= 1e-10);
        CHECK(std::abs(fl.dhext_dt - fr.dhext_dt) <= 1e-10);
    }
}

TEST_CASE("u = I collapses the ledger to the undriven thermal case") {
    AmplifierConfig cfg;
    cfg.n_fock = 6;
    cfg.bath_unitary = AmplifierConfig::BathUnitary::Identity;
    testing::Rng rng(76);
    for (Frame frame : {Frame::Rotating, Frame::Lab}) {
        cfg.frame = frame;
        const AmplifierModel m = build_amplifier(cfg);
        for (double t : {0.0, 0.6}) {
            const DensityMatrix rho = testing::random_density(rng, m.pair.h_sys.space());
            const EnergyFlows f = thermal_energy_flows(m.pair, rho, t);
            CHECK(f.work_power == 0.0);
            CHECK(std::abs(f.residual_first_law) <= 1e-12);
        }
    }
}
