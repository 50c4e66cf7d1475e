#pragma once

#include <cstddef>
#include <optional>

#include "genbath/generalized_bath.hpp"
#include "genbath/integrator.hpp"
#include "genbath/thermo_ledger.hpp"

namespace genbath {

// Qubit (slot 0) pumped by a flipped vacuum bath, exchanging excitations with
// a resonant cavity (slot 1).
struct AmplifierConfig {
    enum class BathUnitary { SigmaX, Identity };

    double omega = 10.0;
    double g = 10.0;
    double gamma = 1.0;
    std::size_t n_fock = 60;
    double t_max = 20.0;           // units of 1/gamma
    double sample_interval = 0.05; // units of 1/gamma
    Representation representation = Representation::Generalized;
    Frame frame = Frame::Rotating;
    // Identity turns the flipped bath back into a plain vacuum bath.
    BathUnitary bath_unitary = BathUnitary::SigmaX;

    void validate() const;
    double t_max_physical() const { return t_max / gamma; }
    double sample_interval_physical() const { return sample_interval / gamma; }
};

struct AmplifierModel {
    AmplifierConfig config;
    GeneralizedBathSpec bath;
    RepresentationPair pair;

    // Bookkeeping on the joint [2, n_fock] space.
    Operator sigma_z;
    Operator number;
    Operator sigma_minus_a; // thermal-representation correlator

    // |g> ⊗ |0> in the generalized representation, mapped for the thermal one.
    DensityMatrix initial_state(Representation r) const;
    IntegratorConfig integrator_config(double rtol, double atol) const;
};

// V = i g (sigma_plus a - a^dagger sigma_minus) on [2, n_fock]
Operator amplifier_coupling(std::size_t n_fock, double g);

AmplifierModel build_amplifier(const AmplifierConfig& cfg);

struct PhotonStatistics {
    double n_mean = 0.0;
    double n_var = 0.0;
    std::optional<double> fano;
};

PhotonStatistics photon_statistics(const DensityMatrix& rho_ext);

// Steady state under the Poissonian ansatz.
struct SteadyStatePredictions {
    double dn_dt;
    double sigma_z;
    double dhext_dt;
    double dhsys_dt;
    double work_power;
    double heat_power;
    double fano;
    double correlator_re; // Re <sigma_minus a> in the thermal representation
};

SteadyStatePredictions steady_state_predictions(const AmplifierConfig& cfg);

// -(omega gamma / 2)(1 + <sigma_z>), valid for the vacuum qubit bath.
double amplifier_heat_closed_form(double omega, double gamma, double sigma_z_thermal);

// Ledger row for a sample of the `integrated` member.
ThermoRecord record_sample(const AmplifierModel& model, Representation integrated, double t,
                           const DensityMatrix& rho, const SampleMonitor& monitor);

} // namespace genbath
