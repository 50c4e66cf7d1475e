#pragma once

#include <random>

#include "genbath/operator.hpp"

namespace genbath::testing {

using Rng = std::mt19937_64;

inline Matrix random_matrix(Rng& rng, std::size_t n, std::size_t m) {
    std::normal_distribution<double> dist;
    Matrix out(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(m));
    for (Eigen::Index i = 0; i < out.rows(); ++i) {
        for (Eigen::Index j = 0; j < out.cols(); ++j) {
            out(i, j) = cplx(dist(rng), dist(rng));
        }
    }
    return out;
}

inline Operator random_operator(Rng& rng, const HilbertSpace& space) {
    return {space, random_matrix(rng, space.total(), space.total())};
}

inline Operator random_hermitian(Rng& rng, const HilbertSpace& space) {
    const Matrix a = random_matrix(rng, space.total(), space.total());
    return {space, 0.5 * (a + a.adjoint())};
}

// Haar-ish unitary from the QR factor of a Gaussian matrix.
inline Operator random_unitary(Rng& rng, const HilbertSpace& space) {
    const Matrix a = random_matrix(rng, space.total(), space.total());
    Eigen::HouseholderQR<Matrix> qr(a);
    return {space, qr.householderQ() * Matrix::Identity(a.rows(), a.cols())};
}

inline DensityMatrix random_density(Rng& rng, const HilbertSpace& space) {
    const Matrix a = random_matrix(rng, space.total(), space.total());
    Matrix rho = a * a.adjoint();
    rho /= rho.trace();
    rho = 0.5 * (rho + rho.adjoint());
    return DensityMatrix(Operator(space, rho));
}

} // namespace genbath::testing
