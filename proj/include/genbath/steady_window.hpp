#pragma once

#include <span>
#include <vector>

namespace genbath {

struct WindowStats {
    double mean = 0.0;   // trapezoidal time average over the window
    double spread = 0.0; // max |value - mean| over samples in the window
    std::size_t samples = 0;
};

// Statistics of `values` (sampled at `times`) restricted to [t_a, t_b].
WindowStats detect_steady_window(std::span<const double> times, std::span<const double> values,
                                 double t_a, double t_b);

std::vector<WindowStats> detect_steady_window(std::span<const double> times,
                                              const std::vector<std::vector<double>>& series,
                                              double t_a, double t_b);

} // namespace genbath
