#pragma once

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "genbath/hilbert_space.hpp"

namespace genbath {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Dense square operator tagged with the space it acts on.
class Operator {
public:
    Operator() = default;
    Operator(HilbertSpace space, Matrix matrix);

    static Operator identity(const HilbertSpace& space);
    static Operator zero(const HilbertSpace& space);

    const HilbertSpace& space() const { return space_; }
    const Matrix& matrix() const { return matrix_; }
    std::size_t dim() const { return space_.total(); }

    cplx operator()(std::size_t i, std::size_t j) const {
        return matrix_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }

    Operator adjoint() const { return {space_, matrix_.adjoint()}; }
    cplx trace() const { return matrix_.trace(); }

    // max_ij |A_ij - conj(A_ji)|
    double hermiticity_error() const;
    bool is_hermitian(double tol = 1e-10) const { return hermiticity_error() <= tol; }
    // max_ij |A A^dagger - I|
    double unitarity_error() const;

    Operator& operator+=(const Operator& other);
    Operator& operator-=(const Operator& other);
    Operator& operator*=(cplx s);

    friend Operator operator+(Operator a, const Operator& b) { return a += b; }
    friend Operator operator-(Operator a, const Operator& b) { return a -= b; }
    friend Operator operator*(Operator a, cplx s) { return a *= s; }
    friend Operator operator*(cplx s, Operator a) { return a *= s; }
    friend Operator operator*(double s, Operator a) { return a *= cplx(s, 0.0); }
    friend Operator operator-(Operator a) { return a *= cplx(-1.0, 0.0); }
    friend Operator operator*(const Operator& a, const Operator& b);

private:
    HilbertSpace space_;
    Matrix matrix_ = Matrix::Ones(1, 1);
};

Operator commutator(const Operator& a, const Operator& b);

// max elementwise |a - b|
double max_abs_diff(const Operator& a, const Operator& b);
double max_abs(const Matrix& m);

// Normalized, Hermitian state. The checked constructor enforces the trace and
// hermiticity tolerances; positivity is audited on demand.
class DensityMatrix {
public:
    static constexpr double kHermiticityTol = 1e-10;
    static constexpr double kTraceTol = 1e-8;
    static constexpr double kPositivityTol = 1e-8;

    explicit DensityMatrix(Operator op);

    // Skips validation; used for integrator samples whose health is tracked
    // by separate monitors.
    static DensityMatrix trusted(Operator op);

    static DensityMatrix pure(const HilbertSpace& space, const Vector& psi);

    const Operator& op() const { return op_; }
    const HilbertSpace& space() const { return op_.space(); }
    const Matrix& matrix() const { return op_.matrix(); }

    double trace_error() const { return std::abs(op_.trace() - cplx(1.0, 0.0)); }
    double min_eigenvalue() const;
    // Throws NumericalFailure when the smallest eigenvalue is below -tol.
    void audit_positivity(double tol = kPositivityTol) const;

private:
    struct TrustedTag {};
    DensityMatrix(Operator op, TrustedTag) : op_(std::move(op)) {}

    Operator op_;
};

struct Channel {
    Operator jump;
    double rate = 0.0;
    std::string label;

    Channel(Operator jump, double rate, std::string label = {});
};

// Tensor product, row-major: (a ⊗ b)[i*db + k, j*db + l] = a[i,j] * b[k,l].
Operator kron(const Operator& a, const Operator& b);
Operator kron(const std::vector<Operator>& factors);

// x placed on `slot` of `space`, identity elsewhere.
Operator embed(const Operator& x, const HilbertSpace& space, std::size_t slot);

// D[c]rho = c rho c^dagger - 1/2 {c^dagger c, rho}
Operator dissipator_apply(const Operator& c, const DensityMatrix& rho);
Matrix dissipator_apply(const Matrix& c, const Matrix& rho);

// Reduced state on `keep`, tracing out every other slot.
DensityMatrix partial_trace(const DensityMatrix& rho, std::size_t keep);

// Tr[obs rho]
cplx expectation(const Operator& obs, const DensityMatrix& rho);
double expectation_real(const Operator& obs, const DensityMatrix& rho);

// exp(scale * a). Hermitian inputs with real or imaginary scale go through an
// eigendecomposition; everything else uses Pade scaling-and-squaring.
Operator matrix_exp(const Operator& a, cplx scale);

} // namespace genbath
