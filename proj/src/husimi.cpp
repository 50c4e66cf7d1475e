#include "genbath/husimi.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "genbath/error.hpp"
#include "genbath/states.hpp"

namespace genbath {

void HusimiGrid::validate() const {
    if (points < 2) {
        throw InvalidArgument("Husimi grid needs at least two points per axis");
    }
    if (!(re_max > re_min) || !(im_max > im_min)) {
        throw InvalidArgument("Husimi grid bounds must be increasing");
    }
}

double HusimiGrid::re(std::size_t i) const {
    return re_min + (re_max - re_min) * static_cast<double>(i) / static_cast<double>(points - 1);
}

double HusimiGrid::im(std::size_t j) const {
    return im_min + (im_max - im_min) * static_cast<double>(j) / static_cast<double>(points - 1);
}

double HusimiGrid::cell_area() const {
    const auto n = static_cast<double>(points - 1);
    return (re_max - re_min) / n * (im_max - im_min) / n;
}

double HusimiGrid::mass() const {
    double s = 0.0;
    for (double v : values) {
        s += v;
    }
    return s * cell_area();
}

double husimi_value(const DensityMatrix& rho_ext, cplx alpha) {
    const Vector v = coherent_amplitudes(alpha, rho_ext.space().total());
    return (v.adjoint() * rho_ext.matrix() * v)(0, 0).real() / std::numbers::pi;
}

HusimiGrid husimi_q(const DensityMatrix& rho_ext, HusimiGrid grid) {
    grid.validate();
    if (rho_ext.space().slots() != 1) {
        throw SpaceMismatch("husimi_q expects the reduced state of a single mode");
    }
    grid.values.assign(grid.points * grid.points, 0.0);
    for (std::size_t j = 0; j < grid.points; ++j) {
        for (std::size_t i = 0; i < grid.points; ++i) {
            grid.values[j * grid.points + i] = husimi_value(rho_ext, {grid.re(i), grid.im(j)});
        }
    }
    return grid;
}

namespace {

double ring_average(const DensityMatrix& rho, double r, std::size_t angles) {
    double s = 0.0;
    for (std::size_t k = 0; k < angles; ++k) {
        const double phi = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(angles);
        s += husimi_value(rho, std::polar(r, phi));
    }
    return s / static_cast<double>(angles);
}

} // namespace

HusimiRing husimi_ring(const DensityMatrix& rho_ext, double r_max, std::size_t angles) {
    if (!(r_max > 0.0) || angles < 1) {
        throw InvalidArgument("husimi_ring needs r_max > 0 and at least one angle");
    }
    constexpr std::size_t kProfileAngles = 16;
    constexpr std::size_t kRadialSteps = 400;
    const double dr = r_max / static_cast<double>(kRadialSteps);

    std::size_t best = 0;
    double best_q = -1.0;
    for (std::size_t k = 0; k <= kRadialSteps; ++k) {
        const double q = ring_average(rho_ext, dr * static_cast<double>(k), kProfileAngles);
        if (q > best_q) {
            best_q = q;
            best = k;
        }
    }

    // golden-section refinement around the coarse maximum
    double a = dr * static_cast<double>(best == 0 ? 0 : best - 1);
    double b = dr * static_cast<double>(std::min(best + 1, kRadialSteps));
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double qc = ring_average(rho_ext, c, kProfileAngles);
    double qd = ring_average(rho_ext, d, kProfileAngles);
    for (int it = 0; it < 60 && b - a > 1e-10; ++it) {
        if (qc > qd) {
            b = d;
            d = c;
            qd = qc;
            c = b - inv_phi * (b - a);
            qc = ring_average(rho_ext, c, kProfileAngles);
        } else {
            a = c;
            c = d;
            qc = qd;
            d = a + inv_phi * (b - a);
            qd = ring_average(rho_ext, d, kProfileAngles);
        }
    }

    HusimiRing ring;
    ring.peak_radius = 0.5 * (a + b);
    double lo = INFINITY;
    double hi = -INFINITY;
    double sum = 0.0;
    for (std::size_t k = 0; k < angles; ++k) {
        const double phi = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(angles);
        const double q = husimi_value(rho_ext, std::polar(ring.peak_radius, phi));
        lo = std::min(lo, q);
        hi = std::max(hi, q);
        sum += q;
    }
    ring.mean_on_ring = sum / static_cast<double>(angles);
    ring.angular_variation = ring.mean_on_ring > 0.0 ? (hi - lo) / ring.mean_on_ring : 0.0;
    return ring;
}

} // namespace genbath
