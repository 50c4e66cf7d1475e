#pragma once

#include <cstddef>
#include <vector>

#include "genbath/operator.hpp"

namespace genbath {

// Square sampling grid for Q(alpha) = <alpha|rho|alpha> / pi. Values are
// stored with the imaginary axis as the outer index: values[j * points + i]
// holds alpha = re(i) + i im(j).
struct HusimiGrid {
    double re_min = -6.0;
    double re_max = 6.0;
    double im_min = -6.0;
    double im_max = 6.0;
    std::size_t points = 121;
    std::vector<double> values;

    void validate() const;
    double re(std::size_t i) const;
    double im(std::size_t j) const;
    double cell_area() const;
    double at(std::size_t i_re, std::size_t j_im) const { return values[j_im * points + i_re]; }
    // Riemann sum of Q times the cell area.
    double mass() const;
};

// Uses the exact projection of |alpha> onto the truncated Fock space, so no
// renormalization error enters for states supported on that space.
double husimi_value(const DensityMatrix& rho_ext, cplx alpha);

HusimiGrid husimi_q(const DensityMatrix& rho_ext, HusimiGrid grid);

struct HusimiRing {
    double peak_radius = 0.0;
    double mean_on_ring = 0.0;
    // (max - min) / mean of Q along the circle of peak radius
    double angular_variation = 0.0;
};

// Locates the radius maximizing the angle-averaged Q within [0, r_max] and
// measures the angular variation there.
HusimiRing husimi_ring(const DensityMatrix& rho_ext, double r_max, std::size_t angles = 360);

} // namespace genbath
