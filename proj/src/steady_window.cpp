#include "genbath/steady_window.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "genbath/error.hpp"

namespace genbath {

WindowStats detect_steady_window(std::span<const double> times, std::span<const double> values,
                                 double t_a, double t_b) {
    if (times.size() != values.size()) {
        throw InvalidArgument("time and value series differ in length");
    }
    if (times.empty() || !(t_a <= t_b)) {
        throw InvalidArgument("empty steady-state window");
    }
    const double tol = 1e-9 * std::max(1.0, std::abs(t_b));
    if (t_a < times.front() - tol || t_b > times.back() + tol) {
        throw InvalidArgument(fmt::format("window [{}, {}] outside trajectory span [{}, {}]", t_a,
                                          t_b, times.front(), times.back()));
    }

    std::vector<std::size_t> idx;
    for (std::size_t k = 0; k < times.size(); ++k) {
        if (times[k] >= t_a - tol && times[k] <= t_b + tol) {
            idx.push_back(k);
        }
    }
    if (idx.empty()) {
        throw InvalidArgument(fmt::format("no samples inside window [{}, {}]", t_a, t_b));
    }

    WindowStats out;
    out.samples = idx.size();
    if (idx.size() == 1) {
        out.mean = values[idx.front()];
        return out;
    }
    // Integrate deviations from the first value so constant series stay exact.
    const double base = values[idx.front()];
    double area = 0.0;
    for (std::size_t k = 1; k < idx.size(); ++k) {
        const double dt = times[idx[k]] - times[idx[k - 1]];
        area += 0.5 * dt * ((values[idx[k]] - base) + (values[idx[k - 1]] - base));
    }
    out.mean = base + area / (times[idx.back()] - times[idx.front()]);
    for (auto k : idx) {
        out.spread = std::max(out.spread, std::abs(values[k] - out.mean));
    }
    return out;
}

std::vector<WindowStats> detect_steady_window(std::span<const double> times,
                                              const std::vector<std::vector<double>>& series,
                                              double t_a, double t_b) {
    std::vector<WindowStats> out;
    out.reserve(series.size());
    for (const auto& s : series) {
        out.push_back(detect_steady_window(times, s, t_a, t_b));
    }
    return out;
}

} // namespace genbath
