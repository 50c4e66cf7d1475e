#pragma once

#include <vector>

#include "genbath/master_equation.hpp"
#include "genbath/operator.hpp"
#include "genbath/scheduled_operator.hpp"

namespace genbath {

// A thermal bath on the working medium, transformed by the unitary `u`.
// All operators act on the system space alone; the system becomes slot 0 of
// the joint space when an external system is attached.
struct GeneralizedBathSpec {
    Operator h_sys;
    Operator u;
    std::vector<Channel> thermal_channels;
    double temperature = 0.0;

    // Throws InvalidArgument on a non-unitary u (1e-12), non-Hermitian h_sys
    // or channels on the wrong space.
    void validate() const;

    // u rho_T u^dagger, the state the generalized bath equilibrates to.
    DensityMatrix fixed_point() const;
};

enum class Frame { Lab, Rotating };

enum class Representation { Generalized, Thermal };

// exp(-i h_sys t) u exp(i h_sys t)
Operator interaction_frame_unitary(const Operator& h_sys, const Operator& u, double t);

// Exact phase schedule of U(t) x U(t)^dagger, with U(t) the interaction-frame
// unitary of (h_sys, u) acting on slot 0 of x's space. Built from the Bohr
// frequencies of h_sys.
ScheduledOperator conjugate_schedule(const Operator& h_sys, const Operator& u, const Operator& x);

// Thermal channels conjugated by U(t). Channels whose conjugate is a fixed
// operator times a global phase are returned phase-stripped.
std::vector<Channel> transform_channels(const GeneralizedBathSpec& spec, double t);

// Same conjugation as a time-dependent schedule, embedded into `space`.
std::vector<ScheduledChannel> transformed_channel_schedule(const GeneralizedBathSpec& spec,
                                                           const HilbertSpace& space);

struct TransformedCoupling {
    ScheduledOperator v_tilde;     // U(t)^dagger V U(t)
    ScheduledOperator dv_tilde_dt; // its exact time derivative
};

// Operators are on the joint space. u_embedded and h_sys_embedded must act as
// the identity on every slot but the first.
TransformedCoupling transform_coupling(const Operator& h_sys_embedded, const Operator& u_embedded,
                                       const Operator& v);

// Splits an operator of the form a ⊗ I into its slot-0 factor, throwing
// InvalidArgument when it has support beyond slot 0.
Operator system_factor(const Operator& embedded, double tol = 1e-12);

// Operator on the joint space rotated by exp(i h0 t): x -> exp(i h0 t) x exp(-i h0 t).
ScheduledOperator rotate_into_frame(const ScheduledOperator& x, const Operator& h0);

enum class MapDirection {
    ThermalToGeneralized, // rho -> U(t) rho U(t)^dagger
    GeneralizedToThermal, // rho -> U(t)^dagger rho U(t)
};

DensityMatrix map_state_between_representations(const DensityMatrix& rho,
                                                const Operator& h_sys_embedded,
                                                const Operator& u_embedded, double t,
                                                MapDirection direction);

// Both sides of the unitary equivalence. In the lab frame the generalized
// member carries H_sys + H_ext + V with transformed channels and the thermal
// member H_sys + H_ext + U(t)^dagger V U(t) with the plain thermal channels.
// The rotating frame co-rotates with H_sys + H_ext, which removes every
// explicit time dependence in the resonant case.
struct RepresentationPair {
    MasterEquation generalized;
    MasterEquation thermal;
    Frame frame;

    // Energy bookkeeping on the joint space. Both commute with the frame
    // rotation so their expectations are frame-invariant.
    Operator h_sys;
    Operator h_ext;
    Operator u_embedded;

    // Drive of the thermal member and its derivative, expressed in `frame`.
    ScheduledOperator v_tilde;
    ScheduledOperator dv_tilde_dt;

    const MasterEquation& member(Representation r) const {
        return r == Representation::Generalized ? generalized : thermal;
    }

    DensityMatrix to_generalized(const DensityMatrix& rho_thermal, double t) const;
    DensityMatrix to_thermal(const DensityMatrix& rho_generalized, double t) const;
};

RepresentationPair build_representations(const GeneralizedBathSpec& spec, const Operator& h_ext,
                                         const Operator& v, Frame frame);

} // namespace genbath
