#include <doctest.h>

#include <cmath>

#include "genbath/amplifier.hpp"
#include "genbath/error.hpp"
#include "genbath/states.hpp"

using namespace genbath;

TEST_CASE("thermal qubit limits") {
    const Operator h = 0.5 * 3.0 * qubit::sigma_z();
    CHECK(max_abs_diff(thermal_state(h, 0.0).op(), qubit::ground_projector()) < 1e-15);
    CHECK(max_abs(thermal_state(h, kInfiniteTemperature).matrix() - 0.5 * Matrix::Identity(2, 2)) < 1e-15);
    CHECK_THROWS_AS(thermal_state(h, -1.0), InvalidArgument);
}

TEST_CASE("Gibbs weights at T = omega") {
    const double omega = 2.0;
    const DensityMatrix rho = thermal_state(0.5 * omega * qubit::sigma_z(), omega);
    // Gap omega between g and e, so p_e = exp(-1) / (1 + exp(-1)) = 1 / (1 + e)
    const double p_e = std::exp(-1.0) / (1.0 + std::exp(-1.0));
    CHECK(p_e == doctest::Approx(0.26894).epsilon(1e-5));
    CHECK(std::abs(rho.matrix()(1, 1).real() - p_e) < 1e-14);
}

TEST_CASE("zero-temperature degenerate ground space is mixed uniformly") {
    Matrix h = Matrix::Zero(3, 3);
    h(2, 2) = 1.0;
    const DensityMatrix rho = thermal_state(Operator(HilbertSpace({3}), h), 0.0);
    CHECK(std::abs(rho.matrix()(0, 0).real() - 0.5) < 1e-15);
    CHECK(std::abs(rho.matrix()(1, 1).real() - 0.5) < 1e-15);
    CHECK(std::abs(rho.matrix()(2, 2)) < 1e-15);
}

TEST_CASE("thermal cavity with mean occupation one half") {
    // nbar = 1 / (exp(w/T) - 1) = 0.5  =>  exp(-w/T) = 1/3.
    const double omega = 1.0;
    const double temperature = omega / std::log(3.0);
    const std::size_t n_fock = 80;
    const DensityMatrix rho = thermal_state(omega * boson::number(n_fock), temperature);

    double z = 0.0, n1 = 0.0, n2 = 0.0;
    for (std::size_t n = 0; n < n_fock; ++n) {
        const double w = std::pow(1.0 / 3.0, static_cast<double>(n));
        z += w;
        n1 += static_cast<double>(n) * w;
        n2 += static_cast<double>(n * n) * w;
    }
    n1 /= z;
    n2 /= z;
    CHECK(std::abs(n1 - 0.5) < 1e-12);
    CHECK(std::abs(expectation_real(boson::number(n_fock), rho) - n1) < 1e-12);

    const PhotonStatistics stats = photon_statistics(rho);
    REQUIRE(stats.fano.has_value());
    CHECK(std::abs(*stats.fano - (n2 - n1 * n1) / n1) < 1e-12);
    CHECK(std::abs(*stats.fano - 1.5) < 1e-12);
    CHECK(bose_occupation(omega, temperature) == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("thermal qubit channels") {
    const auto zero = thermal_qubit_channels(10.0, 1.0, 0.0);
    REQUIRE(zero.size() == 1);
    CHECK(zero[0].rate == 1.0);
    CHECK(max_abs_diff(zero[0].jump, qubit::sigma_minus()) == 0.0);

    const auto warm = thermal_qubit_channels(1.0, 2.0, 1.0 / std::log(3.0));
    REQUIRE(warm.size() == 2);
    CHECK(warm[0].rate == doctest::Approx(3.0));
    CHECK(warm[1].rate == doctest::Approx(1.0));
}

TEST_CASE("coherent states") {
    CHECK(max_abs_diff(coherent_state(0.0, 10).op(), fock_state(0, 10).op()) == 0.0);

    const DensityMatrix c = coherent_state(2.0, 40);
    double series = 0.0;
    double p = std::exp(-4.0);
    for (int n = 0; n < 40; ++n) {
        series += n * p;
        p *= 4.0 / (n + 1);
    }
    CHECK(std::abs(series - 4.0) < 1e-10);
    CHECK(std::abs(expectation_real(boson::number(40), c) - 4.0) < 1e-10);

    for (cplx alpha : {cplx(1.0, 0.5), cplx(-2.0, 1.0), cplx(0.0, 3.0)}) {
        const auto stats = photon_statistics(coherent_state(alpha, 60));
        REQUIRE(stats.fano.has_value());
        CHECK(std::abs(*stats.fano - 1.0) < 1e-9);
    }
    CHECK_THROWS_AS(coherent_state(3.0, 10), InvalidArgument);
    CHECK(coherent_tail_mass(3.0, 10) > 1e-10);
}

TEST_CASE("photon statistics of number states") {
    const auto two = photon_statistics(fock_state(2, 6));
    CHECK(two.n_mean == doctest::Approx(2.0));
    REQUIRE(two.fano.has_value());
    CHECK(std::abs(*two.fano) < 1e-14);

    const auto vac = photon_statistics(fock_state(0, 6));
    CHECK(vac.n_mean == 0.0);
    CHECK(vac.n_var == 0.0);
    CHECK_FALSE(vac.fano.has_value());
}

TEST_CASE("ladder operators") {
    const std::size_t n = 5;
    const Operator a = boson::annihilation(n);
    CHECK(max_abs_diff(boson::creation(n) * a, boson::number(n)) < 1e-15);
    // [a, a^dagger] = 1 except on the truncation edge
    const Operator comm = commutator(a, boson::creation(n));
    for (std::size_t k = 0; k + 1 < n; ++k) {
        CHECK(std::abs(comm(k, k) - 1.0) < 1e-14);
    }
    CHECK(max_abs_diff(qubit::sigma_plus() * qubit::sigma_minus(), qubit::excited_projector()) == 0.0);
}
