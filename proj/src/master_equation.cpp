#include "genbath/master_equation.hpp"

#include <cmath>

#include <fmt/format.h>

#include "genbath/error.hpp"

namespace genbath {

ScheduledChannel::ScheduledChannel(ScheduledOperator jump_, double rate_, std::string label_)
    : jump(std::move(jump_)), rate(rate_), label(std::move(label_)) {
    if (!(rate >= 0.0)) {
        throw InvalidArgument(fmt::format("channel '{}' has negative rate {}", label, rate));
    }
}

ScheduledChannel::ScheduledChannel(const Channel& c)
    : ScheduledChannel(ScheduledOperator(c.jump), c.rate, c.label) {}

MasterEquation::MasterEquation(ScheduledOperator hamiltonian,
                               std::vector<ScheduledChannel> channels)
    : hamiltonian_(std::move(hamiltonian)), channels_(std::move(channels)) {
    const auto n = static_cast<Eigen::Index>(space().total());
    static_drift_ = Matrix::Zero(n, n);
    for (std::size_t k = 0; k < channels_.size(); ++k) {
        const auto& ch = channels_[k];
        require_same_space(space(), ch.jump.space(), "MasterEquation channel");
        if (ch.rate == 0.0) {
            continue;
        }
        if (ch.jump.is_single_phase()) {
            StaticJump sj;
            sj.c = std::sqrt(ch.rate) * ch.jump.phase_stripped().matrix();
            sj.cd = sj.c.adjoint();
            static_drift_ -= 0.5 * sj.cd * sj.c;
            static_jumps_.push_back(std::move(sj));
        } else {
            dynamic_channels_.push_back(k);
        }
    }
    static_hamiltonian_ = hamiltonian_.is_static();
    if (static_hamiltonian_) {
        static_k_ = cplx(0.0, -1.0) * hamiltonian_.evaluate_matrix(0.0) + static_drift_;
    }
}

bool MasterEquation::is_time_independent() const {
    return static_hamiltonian_ && dynamic_channels_.empty();
}

Matrix MasterEquation::rhs(const Matrix& rho, double t) const {
    Matrix k = static_hamiltonian_
                   ? static_k_
                   : Matrix(cplx(0.0, -1.0) * hamiltonian_.evaluate_matrix(t) + static_drift_);
    Matrix out;
    for (std::size_t idx : dynamic_channels_) {
        const auto& ch = channels_[idx];
        const Matrix c = std::sqrt(ch.rate) * ch.jump.evaluate_matrix(t);
        k.noalias() -= 0.5 * c.adjoint() * c;
    }
    out.noalias() = k * rho;
    out.noalias() += rho * k.adjoint();
    Matrix tmp;
    for (const auto& sj : static_jumps_) {
        tmp.noalias() = sj.c * rho;
        out.noalias() += tmp * sj.cd;
    }
    for (std::size_t idx : dynamic_channels_) {
        const auto& ch = channels_[idx];
        const Matrix c = std::sqrt(ch.rate) * ch.jump.evaluate_matrix(t);
        tmp.noalias() = c * rho;
        out.noalias() += tmp * c.adjoint();
    }
    return out;
}

Matrix MasterEquation::dissipative_rhs(const Matrix& rho, double t) const {
    const auto n = static_cast<Eigen::Index>(space().total());
    Matrix out = Matrix::Zero(n, n);
    for (const auto& ch : channels_) {
        if (ch.rate == 0.0) {
            continue;
        }
        out += ch.rate * dissipator_apply(ch.jump.evaluate_matrix(t), rho);
    }
    return out;
}

Operator rhs(const MasterEquation& me, const DensityMatrix& rho, double t) {
    require_same_space(me.space(), rho.space(), "rhs");
    return {me.space(), me.rhs(rho.matrix(), t)};
}

} // namespace genbath
