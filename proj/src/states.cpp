#include "genbath/states.hpp"

#include <cmath>

#include <fmt/format.h>

#include "genbath/error.hpp"

namespace genbath {

namespace {

Operator qubit_op(cplx m00, cplx m01, cplx m10, cplx m11) {
    Matrix m(2, 2);
    m << m00, m01, m10, m11;
    return {qubit::space(), m};
}

} // namespace

namespace qubit {

HilbertSpace space() { return HilbertSpace({2}); }
Operator sigma_x() { return qubit_op(0.0, 1.0, 1.0, 0.0); }
Operator sigma_y() { return qubit_op(0.0, cplx(0.0, 1.0), cplx(0.0, -1.0), 0.0); }
Operator sigma_z() { return qubit_op(-1.0, 0.0, 0.0, 1.0); }
Operator sigma_plus() { return qubit_op(0.0, 0.0, 1.0, 0.0); }
Operator sigma_minus() { return qubit_op(0.0, 1.0, 0.0, 0.0); }
Operator ground_projector() { return qubit_op(1.0, 0.0, 0.0, 0.0); }
Operator excited_projector() { return qubit_op(0.0, 0.0, 0.0, 1.0); }

} // namespace qubit

namespace boson {

HilbertSpace space(std::size_t n_fock) {
    if (n_fock < 1) {
        throw InvalidArgument("bosonic mode needs at least one level");
    }
    return HilbertSpace({n_fock});
}

Operator annihilation(std::size_t n_fock) {
    const auto n = static_cast<Eigen::Index>(n_fock);
    Matrix a = Matrix::Zero(n, n);
    for (Eigen::Index k = 1; k < n; ++k) {
        a(k - 1, k) = std::sqrt(static_cast<double>(k));
    }
    return {space(n_fock), a};
}

Operator creation(std::size_t n_fock) { return annihilation(n_fock).adjoint(); }

Operator number(std::size_t n_fock) {
    const auto n = static_cast<Eigen::Index>(n_fock);
    Matrix m = Matrix::Zero(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
        m(k, k) = static_cast<double>(k);
    }
    return {space(n_fock), m};
}

} // namespace boson

double bose_occupation(double omega, double temperature) {
    if (temperature < 0.0) {
        throw InvalidArgument("temperature must be nonnegative");
    }
    if (temperature == 0.0) {
        return 0.0;
    }
    return 1.0 / std::expm1(omega / temperature);
}

DensityMatrix thermal_state(const Operator& h, double temperature) {
    if (!(temperature >= 0.0)) {
        throw InvalidArgument(fmt::format("temperature must be nonnegative, got {}", temperature));
    }
    if (!h.is_hermitian(1e-10 * std::max(1.0, max_abs(h.matrix())))) {
        throw InvalidArgument("thermal_state needs a Hermitian Hamiltonian");
    }
    const Matrix hm = 0.5 * (h.matrix() + h.matrix().adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> es(hm);
    const Eigen::VectorXd& e = es.eigenvalues();
    const double e0 = e.minCoeff();
    const double scale = std::max(1.0, e.cwiseAbs().maxCoeff());

    Eigen::VectorXd w(e.size());
    for (Eigen::Index k = 0; k < e.size(); ++k) {
        if (std::isinf(temperature)) {
            w(k) = 1.0;
        } else if (temperature == 0.0) {
            w(k) = (e(k) - e0) <= 1e-12 * scale ? 1.0 : 0.0;
        } else {
            w(k) = std::exp(-(e(k) - e0) / temperature);
        }
    }
    w /= w.sum();
    const Matrix& v = es.eigenvectors();
    Matrix rho = v * w.cast<cplx>().asDiagonal() * v.adjoint();
    rho = 0.5 * (rho + rho.adjoint()).eval();
    return DensityMatrix(Operator(h.space(), std::move(rho)));
}

std::vector<Channel> thermal_qubit_channels(double omega, double gamma, double temperature) {
    if (!(gamma >= 0.0)) {
        throw InvalidArgument("decay rate must be nonnegative");
    }
    if (std::isinf(temperature)) {
        throw InvalidArgument("qubit bath channels need a finite temperature");
    }
    const double nbar = bose_occupation(omega, temperature);
    std::vector<Channel> out;
    out.emplace_back(qubit::sigma_minus(), gamma * (nbar + 1.0), "emission");
    if (nbar > 0.0) {
        out.emplace_back(qubit::sigma_plus(), gamma * nbar, "absorption");
    }
    return out;
}

DensityMatrix fock_state(std::size_t n, std::size_t n_fock) {
    if (n >= n_fock) {
        throw InvalidArgument(fmt::format("Fock level {} outside truncation {}", n, n_fock));
    }
    Vector psi = Vector::Zero(static_cast<Eigen::Index>(n_fock));
    psi(static_cast<Eigen::Index>(n)) = 1.0;
    return DensityMatrix::pure(boson::space(n_fock), psi);
}

Vector coherent_amplitudes(cplx alpha, std::size_t n_fock) {
    const auto n = static_cast<Eigen::Index>(n_fock);
    Vector v(n);
    cplx c = std::exp(-0.5 * std::norm(alpha));
    for (Eigen::Index k = 0; k < n; ++k) {
        v(k) = c;
        c *= alpha / std::sqrt(static_cast<double>(k + 1));
    }
    return v;
}

double coherent_tail_mass(cplx alpha, std::size_t n_fock) {
    const double kept = coherent_amplitudes(alpha, n_fock).squaredNorm();
    return std::max(0.0, 1.0 - kept);
}

DensityMatrix coherent_state(cplx alpha, std::size_t n_fock, double max_tail) {
    const Vector v = coherent_amplitudes(alpha, n_fock);
    const double tail = std::max(0.0, 1.0 - v.squaredNorm());
    if (tail > max_tail) {
        throw InvalidArgument(fmt::format(
            "coherent state |alpha|^2 = {} loses mass {:.3e} beyond {} Fock levels",
            std::norm(alpha), tail, n_fock));
    }
    return DensityMatrix::pure(boson::space(n_fock), v);
}

} // namespace genbath
