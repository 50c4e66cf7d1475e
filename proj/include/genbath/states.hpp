#pragma once

#include <cstddef>
#include <limits>
#include <vector>

#include "genbath/operator.hpp"

namespace genbath {

inline constexpr double kInfiniteTemperature = std::numeric_limits<double>::infinity();

// Qubit operators on the two-level space with |g> = 0, |e> = 1.
namespace qubit {
HilbertSpace space();
Operator sigma_x();
Operator sigma_y();
Operator sigma_z(); // diag(-1, +1)
Operator sigma_plus(); // |e><g|
Operator sigma_minus(); // |g><e|
Operator ground_projector();
Operator excited_projector();
} // namespace qubit

// Truncated bosonic mode with levels 0..n_fock-1.
namespace boson {
HilbertSpace space(std::size_t n_fock);
Operator annihilation(std::size_t n_fock);
Operator creation(std::size_t n_fock);
Operator number(std::size_t n_fock);
} // namespace boson

// Mean Bose-Einstein occupation 1 / (exp(omega / T) - 1); zero at T = 0.
double bose_occupation(double omega, double temperature);

// Gibbs state exp(-h / T) / Z. T = 0 gives the uniform mixture over the ground
// eigenspace, T = kInfiniteTemperature the maximally mixed state.
DensityMatrix thermal_state(const Operator& h, double temperature);

// Detailed-balance qubit channels for a bath at `temperature`:
// sigma_minus at gamma (nbar + 1) and sigma_plus at gamma nbar, or the single
// sigma_minus channel at T = 0.
std::vector<Channel> thermal_qubit_channels(double omega, double gamma, double temperature);

DensityMatrix fock_state(std::size_t n, std::size_t n_fock);

// Probability mass a coherent state of amplitude alpha puts on levels >= n_fock.
double coherent_tail_mass(cplx alpha, std::size_t n_fock);

// Truncated coherent state, renormalized. Throws when the discarded tail mass
// exceeds `max_tail`.
DensityMatrix coherent_state(cplx alpha, std::size_t n_fock, double max_tail = 1e-10);

// exp(-|alpha|^2/2) alpha^n / sqrt(n!) for n < n_fock, without renormalization
// (the exact projection of |alpha> on the truncated space).
Vector coherent_amplitudes(cplx alpha, std::size_t n_fock);

} // namespace genbath
