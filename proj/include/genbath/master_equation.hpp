#pragma once

#include <string>
#include <vector>

#include "genbath/operator.hpp"
#include "genbath/scheduled_operator.hpp"

namespace genbath {

struct ScheduledChannel {
    ScheduledOperator jump;
    double rate = 0.0;
    std::string label;

    ScheduledChannel(ScheduledOperator jump, double rate, std::string label = {});
    ScheduledChannel(const Channel& c); // NOLINT(google-explicit-constructor)
};

// d rho/dt = -i [H(t), rho] + sum_k rate_k D[c_k(t)] rho
class MasterEquation {
public:
    MasterEquation(ScheduledOperator hamiltonian, std::vector<ScheduledChannel> channels);

    const HilbertSpace& space() const { return hamiltonian_.space(); }
    const ScheduledOperator& hamiltonian() const { return hamiltonian_; }
    const std::vector<ScheduledChannel>& channels() const { return channels_; }

    bool is_time_independent() const;

    Matrix rhs(const Matrix& rho, double t) const;
    // Dissipative part only: sum_k rate_k D[c_k(t)] rho.
    Matrix dissipative_rhs(const Matrix& rho, double t) const;

private:
    ScheduledOperator hamiltonian_;
    std::vector<ScheduledChannel> channels_;

    // Channels whose jump is a single phase term are folded into static
    // storage; the phase cancels inside the dissipator.
    struct StaticJump {
        Matrix c;  // sqrt(rate) * c
        Matrix cd; // its adjoint
    };
    std::vector<StaticJump> static_jumps_;
    std::vector<std::size_t> dynamic_channels_;
    Matrix static_drift_; // -1/2 sum over static jumps of c^dagger c
    bool static_hamiltonian_ = false;
    Matrix static_k_; // -i H - 1/2 sum c^dagger c when everything is static
};

Operator rhs(const MasterEquation& me, const DensityMatrix& rho, double t);

} // namespace genbath
