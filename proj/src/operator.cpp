#include "genbath/operator.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <fmt/format.h>

#include "genbath/error.hpp"

namespace genbath {

Operator::Operator(HilbertSpace space, Matrix matrix)
    : space_(std::move(space)), matrix_(std::move(matrix)) {
    const auto n = static_cast<Eigen::Index>(space_.total());
    if (matrix_.rows() != n || matrix_.cols() != n) {
        throw InvalidArgument(fmt::format("operator matrix is {}x{}, space {} needs {}x{}",
                                          matrix_.rows(), matrix_.cols(), space_.to_string(), n,
                                          n));
    }
}

Operator Operator::identity(const HilbertSpace& space) {
    const auto n = static_cast<Eigen::Index>(space.total());
    return {space, Matrix::Identity(n, n)};
}

Operator Operator::zero(const HilbertSpace& space) {
    const auto n = static_cast<Eigen::Index>(space.total());
    return {space, Matrix::Zero(n, n)};
}

double max_abs(const Matrix& m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

double Operator::hermiticity_error() const {
    return max_abs(matrix_ - matrix_.adjoint());
}

double Operator::unitarity_error() const {
    return max_abs(matrix_ * matrix_.adjoint() - Matrix::Identity(matrix_.rows(), matrix_.cols()));
}

Operator& Operator::operator+=(const Operator& other) {
    require_same_space(space_, other.space_, "operator+");
    matrix_ += other.matrix_;
    return *this;
}

Operator& Operator::operator-=(const Operator& other) {
    require_same_space(space_, other.space_, "operator-");
    matrix_ -= other.matrix_;
    return *this;
}

Operator& Operator::operator*=(cplx s) {
    matrix_ *= s;
    return *this;
}

Operator operator*(const Operator& a, const Operator& b) {
    require_same_space(a.space(), b.space(), "operator*");
    return {a.space(), a.matrix() * b.matrix()};
}

Operator commutator(const Operator& a, const Operator& b) {
    return a * b - b * a;
}

double max_abs_diff(const Operator& a, const Operator& b) {
    require_same_space(a.space(), b.space(), "max_abs_diff");
    return max_abs(a.matrix() - b.matrix());
}

// ---------------------------------------------------------------------------

DensityMatrix::DensityMatrix(Operator op) : op_(std::move(op)) {
    const double herm = op_.hermiticity_error();
    if (herm > kHermiticityTol) {
        throw InvalidArgument(fmt::format("density matrix not Hermitian (error {:.3e})", herm));
    }
    if (trace_error() > kTraceTol) {
        throw InvalidArgument(
            fmt::format("density matrix trace deviates from 1 by {:.3e}", trace_error()));
    }
}

DensityMatrix DensityMatrix::trusted(Operator op) {
    return DensityMatrix(std::move(op), TrustedTag{});
}

DensityMatrix DensityMatrix::pure(const HilbertSpace& space, const Vector& psi) {
    if (psi.size() != static_cast<Eigen::Index>(space.total())) {
        throw InvalidArgument("state vector length does not match space");
    }
    const double norm = psi.norm();
    if (norm == 0.0) {
        throw InvalidArgument("zero state vector");
    }
    const Vector v = psi / norm;
    return DensityMatrix(Operator(space, v * v.adjoint()));
}

double DensityMatrix::min_eigenvalue() const {
    const Matrix h = 0.5 * (op_.matrix() + op_.matrix().adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

void DensityMatrix::audit_positivity(double tol) const {
    const double lo = min_eigenvalue();
    if (lo < -tol) {
        throw NumericalFailure(fmt::format("density matrix has eigenvalue {:.3e} < -{:.1e}", lo, tol));
    }
}

Channel::Channel(Operator jump_op, double rate_, std::string label_)
    : jump(std::move(jump_op)), rate(rate_), label(std::move(label_)) {
    if (!(rate >= 0.0)) {
        throw InvalidArgument(fmt::format("channel '{}' has negative rate {}", label, rate));
    }
}

// ---------------------------------------------------------------------------

Operator kron(const Operator& a, const Operator& b) {
    const auto& ma = a.matrix();
    const auto& mb = b.matrix();
    const auto db = mb.rows();
    Matrix out(ma.rows() * db, ma.cols() * db);
    for (Eigen::Index i = 0; i < ma.rows(); ++i) {
        for (Eigen::Index j = 0; j < ma.cols(); ++j) {
            out.block(i * db, j * db, db, db) = ma(i, j) * mb;
        }
    }
    return {a.space().tensor(b.space()), std::move(out)};
}

Operator kron(const std::vector<Operator>& factors) {
    if (factors.empty()) {
        throw InvalidArgument("kron of an empty factor list");
    }
    Operator out = factors.front();
    for (std::size_t k = 1; k < factors.size(); ++k) {
        out = kron(out, factors[k]);
    }
    return out;
}

Operator embed(const Operator& x, const HilbertSpace& space, std::size_t slot) {
    if (x.space().slots() != 1 || x.dim() != space.dim(slot)) {
        throw SpaceMismatch(fmt::format("cannot embed operator on {} into slot {} of {}",
                                        x.space().to_string(), slot, space.to_string()));
    }
    std::vector<Operator> factors;
    factors.reserve(space.slots());
    for (std::size_t k = 0; k < space.slots(); ++k) {
        factors.push_back(k == slot ? x : Operator::identity(HilbertSpace({space.dim(k)})));
    }
    return kron(factors);
}

Matrix dissipator_apply(const Matrix& c, const Matrix& rho) {
    const Matrix cdc = c.adjoint() * c;
    return c * rho * c.adjoint() - 0.5 * (cdc * rho + rho * cdc);
}

Operator dissipator_apply(const Operator& c, const DensityMatrix& rho) {
    require_same_space(c.space(), rho.space(), "dissipator_apply");
    return {c.space(), dissipator_apply(c.matrix(), rho.matrix())};
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::size_t keep) {
    const HilbertSpace& space = rho.space();
    const std::size_t dk = space.dim(keep);
    const std::size_t stride = space.stride(keep);
    const std::size_t outer = space.total() / (dk * stride);
    const Matrix& m = rho.matrix();

    // index = (o * dk + k) * stride + s
    Matrix out = Matrix::Zero(static_cast<Eigen::Index>(dk), static_cast<Eigen::Index>(dk));
    for (std::size_t i = 0; i < dk; ++i) {
        for (std::size_t j = 0; j < dk; ++j) {
            cplx acc = 0.0;
            for (std::size_t o = 0; o < outer; ++o) {
                for (std::size_t s = 0; s < stride; ++s) {
                    const auto r = static_cast<Eigen::Index>((o * dk + i) * stride + s);
                    const auto c = static_cast<Eigen::Index>((o * dk + j) * stride + s);
                    acc += m(r, c);
                }
            }
            out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = acc;
        }
    }
    return DensityMatrix::trusted(Operator(HilbertSpace({dk}), std::move(out)));
}

cplx expectation(const Operator& obs, const DensityMatrix& rho) {
    require_same_space(obs.space(), rho.space(), "expectation");
    // Tr[A B] = sum_ij A_ij B_ji
    return obs.matrix().cwiseProduct(rho.matrix().transpose()).sum();
}

double expectation_real(const Operator& obs, const DensityMatrix& rho) {
    return expectation(obs, rho).real();
}

Operator matrix_exp(const Operator& a, cplx scale) {
    const auto& m = a.matrix();
    if (scale == cplx(0.0, 0.0)) {
        return Operator::identity(a.space());
    }
    const bool real_or_imag = scale.real() == 0.0 || scale.imag() == 0.0;
    if (real_or_imag && a.is_hermitian(1e-14 * std::max(1.0, max_abs(m)))) {
        const Matrix h = 0.5 * (m + m.adjoint());
        Eigen::SelfAdjointEigenSolver<Matrix> es(h);
        const Vector phases = (scale * es.eigenvalues().cast<cplx>().array()).exp().matrix();
        const Matrix& v = es.eigenvectors();
        return {a.space(), v * phases.asDiagonal() * v.adjoint()};
    }
    const Matrix scaled = scale * m;
    return {a.space(), scaled.exp()};
}

} // namespace genbath
