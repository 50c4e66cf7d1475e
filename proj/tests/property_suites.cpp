#include "property_suites.hpp"

#include <algorithm>

#include "genbath/generalized_bath.hpp"
#include "genbath/states.hpp"
#include "random_ops.hpp"

namespace genbath::testing {

namespace {

Operator normalized(const Operator& x) { return (1.0 / max_abs(x.matrix())) * x; }

std::size_t pick_dim(Rng& rng, std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

double uniform(Rng& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

Matrix lindblad_dissipation(const std::vector<Channel>& channels, const Matrix& rho) {
    Matrix out = Matrix::Zero(rho.rows(), rho.cols());
    for (const auto& c : channels) {
        out += c.rate * dissipator_apply(c.jump.matrix(), rho);
    }
    return out;
}

} // namespace

PropertyResult dissipator_trace_property(std::uint64_t seed, std::size_t trials) {
    Rng rng(seed);
    PropertyResult r{"dissipator trace preservation", 0.0, 1e-12, trials};
    for (std::size_t k = 0; k < trials; ++k) {
        const HilbertSpace s({pick_dim(rng, 2, 6)});
        const Operator c = normalized(random_operator(rng, s));
        const DensityMatrix rho = random_density(rng, s);
        r.worst = std::max(r.worst, std::abs(dissipator_apply(c, rho).trace()));
    }
    return r;
}

PropertyResult dissipator_hermiticity_property(std::uint64_t seed, std::size_t trials) {
    Rng rng(seed);
    PropertyResult r{"dissipator hermiticity", 0.0, 1e-12, trials};
    for (std::size_t k = 0; k < trials; ++k) {
        const HilbertSpace s({pick_dim(rng, 2, 6)});
        const Operator c = normalized(random_operator(rng, s));
        const DensityMatrix rho = random_density(rng, s);
        r.worst = std::max(r.worst, dissipator_apply(c, rho).hermiticity_error());
    }
    return r;
}

PropertyResult thermal_commutes_property(std::uint64_t seed, std::size_t trials) {
    Rng rng(seed);
    PropertyResult r{"thermal state commutes with H", 0.0, 1e-12, trials};
    for (std::size_t k = 0; k < trials; ++k) {
        const HilbertSpace s({pick_dim(rng, 2, 6)});
        const Operator h = normalized(random_hermitian(rng, s));
        const DensityMatrix rho = thermal_state(h, uniform(rng, 0.1, 5.0));
        r.worst = std::max(r.worst, max_abs(commutator(rho.op(), h).matrix()));
    }
    return r;
}

PropertyResult thermal_fixed_point_property(std::uint64_t seed, std::size_t trials) {
    Rng rng(seed);
    PropertyResult r{"thermal qubit fixed point", 0.0, 1e-12, trials};
    for (std::size_t k = 0; k < trials; ++k) {
        const double omega = uniform(rng, 0.5, 5.0);
        const double gamma = uniform(rng, 0.1, 2.0);
        const double temperature = k == 0 ? 0.0 : uniform(rng, 0.1, 10.0);
        const DensityMatrix rho = thermal_state(0.5 * omega * qubit::sigma_z(), temperature);
        const auto channels = thermal_qubit_channels(omega, gamma, temperature);
        r.worst = std::max(r.worst, max_abs(lindblad_dissipation(channels, rho.matrix())));
    }
    return r;
}

PropertyResult covariance_property(std::uint64_t seed, std::size_t trials) {
    Rng rng(seed);
    PropertyResult r{"unitary covariance of the transformed generator", 0.0, 1e-12, trials};
    for (std::size_t k = 0; k < trials; ++k) {
        const HilbertSpace s({pick_dim(rng, 2, 4)});
        GeneralizedBathSpec spec{normalized(random_hermitian(rng, s)), random_unitary(rng, s), {}, 0.0};
        const std::size_t n_channels = pick_dim(rng, 1, 3);
        for (std::size_t j = 0; j < n_channels; ++j) {
            spec.thermal_channels.emplace_back(normalized(random_operator(rng, s)),
                                               uniform(rng, 0.1, 2.0));
        }
        const double t = uniform(rng, -5.0, 5.0);
        const Matrix u = interaction_frame_unitary(spec.h_sys, spec.u, t).matrix();
        const DensityMatrix rho = random_density(rng, s);

        const Matrix definition =
            u * lindblad_dissipation(spec.thermal_channels, u.adjoint() * rho.matrix() * u) *
            u.adjoint();
        const Matrix shortcut = lindblad_dissipation(transform_channels(spec, t), rho.matrix());
        r.worst = std::max(r.worst, max_abs(definition - shortcut));
    }
    return r;
}

PropertyResult frame_unitarity_property(std::uint64_t seed, std::size_t trials) {
    Rng rng(seed);
    PropertyResult r{"interaction-frame unitary is unitary", 0.0, 1e-12, trials};
    for (std::size_t k = 0; k < trials; ++k) {
        const HilbertSpace s({pick_dim(rng, 2, 5)});
        const Operator h = normalized(random_hermitian(rng, s));
        const Operator u = random_unitary(rng, s);
        const double t = uniform(rng, -10.0, 10.0);
        r.worst = std::max(r.worst, interaction_frame_unitary(h, u, t).unitarity_error());
    }
    return r;
}

PropertyResult kron_brute_force_property(std::uint64_t seed, std::size_t trials) {
    Rng rng(seed);
    PropertyResult r{"kron equals index-by-index product", 0.0, 1e-13, trials};
    for (std::size_t k = 0; k < trials; ++k) {
        const std::size_t da = pick_dim(rng, 1, 4);
        const std::size_t db = pick_dim(rng, 1, 4);
        const Operator a = random_operator(rng, HilbertSpace({da}));
        const Operator b = random_operator(rng, HilbertSpace({db}));
        const Operator ab = kron(a, b);
        for (std::size_t i1 = 0; i1 < da; ++i1) {
            for (std::size_t j1 = 0; j1 < da; ++j1) {
                for (std::size_t i2 = 0; i2 < db; ++i2) {
                    for (std::size_t j2 = 0; j2 < db; ++j2) {
                        const cplx expected = a(i1, j1) * b(i2, j2);
                        r.worst = std::max(r.worst,
                                           std::abs(ab(i1 * db + i2, j1 * db + j2) - expected));
                    }
                }
            }
        }
    }
    return r;
}

PropertyResult kron_associativity_property(std::uint64_t seed, std::size_t trials) {
    Rng rng(seed);
    PropertyResult r{"kron associativity", 0.0, 1e-13, trials};
    for (std::size_t k = 0; k < trials; ++k) {
        const Operator a = normalized(random_operator(rng, HilbertSpace({pick_dim(rng, 1, 3)})));
        const Operator b = normalized(random_operator(rng, HilbertSpace({pick_dim(rng, 1, 3)})));
        const Operator c = normalized(random_operator(rng, HilbertSpace({pick_dim(rng, 1, 3)})));
        const Operator left = kron(kron(a, b), c);
        const Operator right = kron(a, kron(b, c));
        r.worst = std::max(r.worst, max_abs(left.matrix() - right.matrix()));
    }
    return r;
}

PropertyResult kron_mixed_product_property(std::uint64_t seed, std::size_t trials) {
    Rng rng(seed);
    PropertyResult r{"kron mixed product", 0.0, 1e-13, trials};
    for (std::size_t k = 0; k < trials; ++k) {
        const HilbertSpace sa({pick_dim(rng, 1, 3)});
        const HilbertSpace sb({pick_dim(rng, 1, 3)});
        const Operator a = normalized(random_operator(rng, sa));
        const Operator b = normalized(random_operator(rng, sb));
        const Operator c = normalized(random_operator(rng, sa));
        const Operator d = normalized(random_operator(rng, sb));
        r.worst = std::max(r.worst,
                           max_abs_diff(kron(a, b) * kron(c, d), kron(a * c, b * d)));
    }
    return r;
}

std::vector<PropertyResult> all_property_suites(std::uint64_t seed) {
    return {
        dissipator_trace_property(seed),       dissipator_hermiticity_property(seed + 1),
        thermal_commutes_property(seed + 2),   thermal_fixed_point_property(seed + 3),
        covariance_property(seed + 4),         frame_unitarity_property(seed + 5),
        kron_brute_force_property(seed + 6),   kron_associativity_property(seed + 7),
        kron_mixed_product_property(seed + 8),
    };
}

} // namespace genbath::testing
