#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <vector>

#include "genbath/master_equation.hpp"
#include "genbath/operator.hpp"

namespace genbath {

enum class StepMethod {
    DormandPrince45, // embedded adaptive 5(4) pair
    ClassicalRK4,    // fixed step
};

struct IntegratorConfig {
    double rtol = 1e-8;
    double atol = 1e-10;
    double max_step = std::numeric_limits<double>::infinity();
    double sample_interval = 0.05;
    StepMethod method = StepMethod::DormandPrince45;

    // Slot holding a truncated bosonic mode whose top two levels are watched.
    std::optional<std::size_t> fock_slot;
    double leakage_threshold = 1e-6;
    // Breaching these marks the run degraded rather than aborting it.
    double trace_threshold = 1e-8;
    double hermiticity_threshold = 1e-9;

    bool store_states = true;
    std::size_t max_steps = 50'000'000;

    void validate() const;
};

struct SampleMonitor {
    double trace_error = 0.0;
    // measured before re-symmetrization
    double hermiticity_error = 0.0;
    double top2_fock_leakage = 0.0;
};

struct Trajectory {
    std::vector<double> sample_times;
    std::vector<DensityMatrix> states; // empty unless store_states
    std::vector<SampleMonitor> monitors;
    bool degraded = false;

    std::size_t accepted_steps = 0;
    std::size_t rejected_steps = 0;
    std::size_t rhs_evaluations = 0;
    // Sum over accepted steps of the max-norm local error estimate.
    double accumulated_error = 0.0;
};

// Called at every sample with the re-symmetrized state.
using SampleObserver =
    std::function<void(std::size_t index, double t, const DensityMatrix& rho, const SampleMonitor&)>;

// Sample times k * interval up to t_max (t_max appended if not a multiple).
std::vector<double> sample_grid(double t_max, double interval);

Trajectory evolve(const MasterEquation& me, const DensityMatrix& rho0, double t_max,
                  const IntegratorConfig& cfg, const SampleObserver& observer = {});

// Population in the top two levels of `slot`.
double top_two_level_population(const Matrix& rho, const HilbertSpace& space, std::size_t slot);

} // namespace genbath
