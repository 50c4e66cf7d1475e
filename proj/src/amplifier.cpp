#include "genbath/amplifier.hpp"

#include <cmath>

#include <fmt/format.h>

#include "genbath/error.hpp"
#include "genbath/states.hpp"

namespace genbath {

void AmplifierConfig::validate() const {
    if (!(omega > 0.0) || !(g > 0.0) || !(gamma > 0.0)) {
        throw InvalidArgument("omega, g and gamma must be positive");
    }
    if (n_fock < 2) {
        throw InvalidArgument("n_fock must be at least 2");
    }
    if (!(t_max >= 0.0) || !std::isfinite(t_max)) {
        throw InvalidArgument("t_max must be finite and nonnegative");
    }
    if (!(sample_interval > 0.0)) {
        throw InvalidArgument("sample_interval must be positive");
    }
}

Operator amplifier_coupling(std::size_t n_fock, double g) {
    const Operator sp_a = kron(qubit::sigma_plus(), boson::annihilation(n_fock));
    const Operator ad_sm = kron(qubit::sigma_minus(), boson::creation(n_fock));
    return cplx(0.0, g) * (sp_a - ad_sm);
}

AmplifierModel build_amplifier(const AmplifierConfig& cfg) {
    cfg.validate();
    const std::size_t n = cfg.n_fock;

    GeneralizedBathSpec bath{
        0.5 * cfg.omega * qubit::sigma_z(),
        cfg.bath_unitary == AmplifierConfig::BathUnitary::SigmaX ? qubit::sigma_x()
                                                                  : Operator::identity(qubit::space()),
        thermal_qubit_channels(cfg.omega, cfg.gamma, 0.0),
        0.0,
    };
    const Operator h_ext =
        cfg.omega * (boson::number(n) + 0.5 * Operator::identity(boson::space(n)));
    const Operator v = amplifier_coupling(n, cfg.g);

    RepresentationPair pair = build_representations(bath, h_ext, v, cfg.frame);
    const Operator id_q = Operator::identity(qubit::space());
    const Operator id_c = Operator::identity(boson::space(n));
    return AmplifierModel{
        cfg,
        std::move(bath),
        std::move(pair),
        kron(qubit::sigma_z(), id_c),
        kron(id_q, boson::number(n)),
        kron(qubit::sigma_minus(), boson::annihilation(n)),
    };
}

DensityMatrix AmplifierModel::initial_state(Representation r) const {
    const HilbertSpace joint = pair.generalized.space();
    Vector psi = Vector::Zero(static_cast<Eigen::Index>(joint.total()));
    psi(0) = 1.0; // |g, 0>
    const DensityMatrix gen = DensityMatrix::pure(joint, psi);
    if (r == Representation::Generalized) {
        return gen;
    }
    return DensityMatrix(pair.to_thermal(gen, 0.0).op());
}

IntegratorConfig AmplifierModel::integrator_config(double rtol, double atol) const {
    IntegratorConfig ic;
    ic.rtol = rtol;
    ic.atol = atol;
    ic.sample_interval = config.sample_interval_physical();
    ic.fock_slot = 1;
    return ic;
}

PhotonStatistics photon_statistics(const DensityMatrix& rho_ext) {
    const Matrix& m = rho_ext.matrix();
    double n1 = 0.0;
    double n2 = 0.0;
    for (Eigen::Index k = 0; k < m.rows(); ++k) {
        const double p = m(k, k).real();
        const auto kd = static_cast<double>(k);
        n1 += kd * p;
        n2 += kd * kd * p;
    }
    PhotonStatistics s;
    s.n_mean = n1;
    s.n_var = std::max(0.0, n2 - n1 * n1);
    if (n1 >= 1e-6) {
        s.fano = s.n_var / n1;
    }
    return s;
}

SteadyStatePredictions steady_state_predictions(const AmplifierConfig& cfg) {
    const double wg = cfg.omega * cfg.gamma;
    return {
        0.5 * cfg.gamma,
        0.0,
        0.5 * wg,
        0.0,
        wg,
        -0.5 * wg,
        1.0,
        -cfg.gamma / (4.0 * cfg.g),
    };
}

double amplifier_heat_closed_form(double omega, double gamma, double sigma_z_thermal) {
    return -0.5 * omega * gamma * (1.0 + sigma_z_thermal);
}

ThermoRecord record_sample(const AmplifierModel& model, Representation integrated, double t,
                           const DensityMatrix& rho, const SampleMonitor& monitor) {
    const RepresentationPair& pair = model.pair;
    ThermoRecord rec;
    rec.t = t;
    const PhotonStatistics stats = photon_statistics(partial_trace(rho, 1));
    rec.n_mean = stats.n_mean;
    rec.n_var = stats.n_var;
    rec.fano = stats.fano;
    rec.sigma_z = expectation_real(model.sigma_z, rho);

    const Matrix drho = pair.member(integrated).rhs(rho.matrix(), t);
    rec.dn_dt = model.number.matrix().cwiseProduct(drho.transpose()).sum().real();

    const DensityMatrix rho_th =
        integrated == Representation::Thermal ? rho : pair.to_thermal(rho, t);
    const EnergyFlows f = thermal_energy_flows(pair, rho_th, t);
    rec.work_power = f.work_power;
    rec.heat_power = f.heat_power;
    rec.dhext_dt = f.dhext_dt;
    rec.dhsys_dt = f.dhsys_dt;
    rec.residual_first_law = f.residual_first_law;
    rec.residual_cost_identity = f.residual_cost_identity;
    rec.trace_error = monitor.trace_error;
    rec.leak_top2 = monitor.top2_fock_leakage;
    return rec;
}

} // namespace genbath
