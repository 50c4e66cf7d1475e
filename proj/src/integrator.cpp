#include "genbath/integrator.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include <fmt/format.h>

#include "genbath/error.hpp"

namespace genbath {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr std::array<double, 7> kC{0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0};
constexpr double kA21 = 1.0 / 5.0;
constexpr double kA31 = 3.0 / 40.0, kA32 = 9.0 / 40.0;
constexpr double kA41 = 44.0 / 45.0, kA42 = -56.0 / 15.0, kA43 = 32.0 / 9.0;
constexpr double kA51 = 19372.0 / 6561.0, kA52 = -25360.0 / 2187.0, kA53 = 64448.0 / 6561.0,
                 kA54 = -212.0 / 729.0;
constexpr double kA61 = 9017.0 / 3168.0, kA62 = -355.0 / 33.0, kA63 = 46732.0 / 5247.0,
                 kA64 = 49.0 / 176.0, kA65 = -5103.0 / 18656.0;
constexpr double kB1 = 35.0 / 384.0, kB3 = 500.0 / 1113.0, kB4 = 125.0 / 192.0,
                 kB5 = -2187.0 / 6784.0, kB6 = 11.0 / 84.0;
// b - b* (difference between the 5th and embedded 4th order weights)
constexpr double kE1 = 71.0 / 57600.0, kE3 = -71.0 / 16695.0, kE4 = 71.0 / 1920.0,
                 kE5 = -17253.0 / 339200.0, kE6 = 22.0 / 525.0, kE7 = -1.0 / 40.0;

constexpr double kSafety = 0.9;
constexpr double kMinFactor = 0.2;
constexpr double kMaxFactor = 5.0;

double scaled_error(const Matrix& err, const Matrix& y0, const Matrix& y1, double atol,
                    double rtol) {
    double worst = 0.0;
    for (Eigen::Index k = 0; k < err.size(); ++k) {
        const double scale =
            atol + rtol * std::max(std::abs(y0.data()[k]), std::abs(y1.data()[k]));
        worst = std::max(worst, std::abs(err.data()[k]) / scale);
    }
    return worst;
}

class Stepper {
public:
    Stepper(const MasterEquation& me, Trajectory& traj) : me_(me), traj_(traj) {}

    Matrix f(const Matrix& y, double t) {
        ++traj_.rhs_evaluations;
        return me_.rhs(y, t);
    }

    const MasterEquation& me_;
    Trajectory& traj_;
};

double initial_step(Stepper& s, const Matrix& y0, const Matrix& f0, double t0, double atol,
                    double rtol, double max_step) {
    // Hairer, Norsett & Wanner, starting step heuristic (order 5).
    auto norm = [&](const Matrix& v) {
        double w = 0.0;
        for (Eigen::Index k = 0; k < v.size(); ++k) {
            w = std::max(w, std::abs(v.data()[k]) / (atol + rtol * std::abs(y0.data()[k])));
        }
        return w;
    };
    const double d0 = norm(y0);
    const double d1 = norm(f0);
    double h0 = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
    h0 = std::min(h0, max_step);
    const Matrix y1 = y0 + h0 * f0;
    const Matrix f1 = s.f(y1, t0 + h0);
    const double d2 = norm(f1 - f0) / h0;
    const double h1 = (std::max(d1, d2) <= 1e-15) ? std::max(1e-6, h0 * 1e-3)
                                                  : std::pow(0.01 / std::max(d1, d2), 1.0 / 5.0);
    return std::min({100.0 * h0, h1, max_step});
}

} // namespace

void IntegratorConfig::validate() const {
    if (!(rtol > 0.0) || !(atol > 0.0)) {
        throw InvalidArgument("integrator tolerances must be positive");
    }
    if (!(sample_interval > 0.0)) {
        throw InvalidArgument("sample_interval must be positive");
    }
    if (!(max_step > 0.0)) {
        throw InvalidArgument("max_step must be positive");
    }
    if (method == StepMethod::ClassicalRK4 && std::isinf(max_step)) {
        throw InvalidArgument("fixed-step RK4 needs a finite max_step");
    }
}

std::vector<double> sample_grid(double t_max, double interval) {
    if (!(t_max >= 0.0)) {
        throw InvalidArgument("t_max must be nonnegative");
    }
    if (!(interval > 0.0)) {
        throw InvalidArgument("sample_interval must be positive");
    }
    const auto count = static_cast<std::size_t>(std::floor(t_max / interval + 1e-9));
    std::vector<double> times;
    times.reserve(count + 2);
    for (std::size_t k = 0; k <= count; ++k) {
        times.push_back(static_cast<double>(k) * interval);
    }
    if (t_max - times.back() > 1e-9 * std::max(1.0, t_max)) {
        times.push_back(t_max);
    }
    return times;
}

double top_two_level_population(const Matrix& rho, const HilbertSpace& space, std::size_t slot) {
    const std::size_t d = space.dim(slot);
    if (d < 2) {
        return std::abs(rho.trace());
    }
    const std::size_t stride = space.stride(slot);
    double pop = 0.0;
    for (std::size_t i = 0; i < space.total(); ++i) {
        const std::size_t level = (i / stride) % d;
        if (level + 2 >= d) {
            pop += rho(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)).real();
        }
    }
    return pop;
}

Trajectory evolve(const MasterEquation& me, const DensityMatrix& rho0, double t_max,
                  const IntegratorConfig& cfg, const SampleObserver& observer) {
    cfg.validate();
    require_same_space(me.space(), rho0.space(), "evolve");

    Trajectory traj;
    traj.sample_times = sample_grid(t_max, cfg.sample_interval);
    Stepper stepper(me, traj);

    Matrix y = rho0.matrix();

    auto record = [&](std::size_t index, double t) {
        SampleMonitor mon;
        mon.hermiticity_error = max_abs(y - y.adjoint());
        y = (0.5 * (y + y.adjoint())).eval();
        mon.trace_error = std::abs(y.trace() - cplx(1.0, 0.0));
        if (cfg.fock_slot) {
            mon.top2_fock_leakage = top_two_level_population(y, me.space(), *cfg.fock_slot);
            if (mon.top2_fock_leakage > cfg.leakage_threshold) {
                throw NumericalFailure(fmt::format(
                    "Fock truncation leakage {:.3e} exceeds {:.1e} at t = {}",
                    mon.top2_fock_leakage, cfg.leakage_threshold, t));
            }
        }
        if (!std::isfinite(mon.trace_error) || mon.trace_error > cfg.trace_threshold ||
            mon.hermiticity_error > cfg.hermiticity_threshold) {
            traj.degraded = true;
        }
        auto state = DensityMatrix::trusted(Operator(me.space(), y));
        if (observer) {
            observer(index, t, state, mon);
        }
        if (cfg.store_states) {
            traj.states.push_back(std::move(state));
        }
        traj.monitors.push_back(mon);
    };

    double t = 0.0;
    record(0, t);
    if (traj.sample_times.size() == 1) {
        return traj;
    }

    if (cfg.method == StepMethod::ClassicalRK4) {
        for (std::size_t s = 1; s < traj.sample_times.size(); ++s) {
            const double t_next = traj.sample_times[s];
            const double span = t_next - t;
            const auto n_sub = static_cast<std::size_t>(std::ceil(span / cfg.max_step - 1e-12));
            const double h = span / static_cast<double>(std::max<std::size_t>(1, n_sub));
            for (std::size_t k = 0; k < std::max<std::size_t>(1, n_sub); ++k) {
                const double tk = t + static_cast<double>(k) * h;
                const Matrix k1 = stepper.f(y, tk);
                const Matrix k2 = stepper.f(y + 0.5 * h * k1, tk + 0.5 * h);
                const Matrix k3 = stepper.f(y + 0.5 * h * k2, tk + 0.5 * h);
                const Matrix k4 = stepper.f(y + h * k3, tk + h);
                y += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
                ++traj.accepted_steps;
            }
            t = t_next;
            record(s, t);
        }
        return traj;
    }

    Matrix k1 = stepper.f(y, t);
    double h = initial_step(stepper, y, k1, t, cfg.atol, cfg.rtol, cfg.max_step);
    Matrix k2, k3, k4, k5, k6, k7, ytmp, ynew;

    for (std::size_t s = 1; s < traj.sample_times.size(); ++s) {
        const double t_next = traj.sample_times[s];
        while (t < t_next) {
            if (traj.accepted_steps + traj.rejected_steps >= cfg.max_steps) {
                throw NumericalFailure(fmt::format("step budget exhausted at t = {}", t));
            }
            bool lands = false;
            double step = std::min(h, cfg.max_step);
            if (t + step >= t_next - 1e-12 * std::max(1.0, t_next)) {
                step = t_next - t;
                lands = true;
            }
            if (step < 1e-12 * std::max(1.0, std::abs(t))) {
                throw NumericalFailure(
                    fmt::format("step size underflow (h = {:.3e}) at t = {}", step, t));
            }

            ytmp = y + step * kA21 * k1;
            k2 = stepper.f(ytmp, t + kC[1] * step);
            ytmp = y + step * (kA31 * k1 + kA32 * k2);
            k3 = stepper.f(ytmp, t + kC[2] * step);
            ytmp = y + step * (kA41 * k1 + kA42 * k2 + kA43 * k3);
            k4 = stepper.f(ytmp, t + kC[3] * step);
            ytmp = y + step * (kA51 * k1 + kA52 * k2 + kA53 * k3 + kA54 * k4);
            k5 = stepper.f(ytmp, t + kC[4] * step);
            ytmp = y + step * (kA61 * k1 + kA62 * k2 + kA63 * k3 + kA64 * k4 + kA65 * k5);
            k6 = stepper.f(ytmp, t + step);
            ynew = y + step * (kB1 * k1 + kB3 * k3 + kB4 * k4 + kB5 * k5 + kB6 * k6);
            k7 = stepper.f(ynew, t + step);

            const Matrix err =
                step * (kE1 * k1 + kE3 * k3 + kE4 * k4 + kE5 * k5 + kE6 * k6 + kE7 * k7);
            const double en = scaled_error(err, y, ynew, cfg.atol, cfg.rtol);

            if (!std::isfinite(en)) {
                ++traj.rejected_steps;
                h = step * kMinFactor;
                continue;
            }
            const double factor =
                en == 0.0 ? kMaxFactor
                          : std::clamp(kSafety * std::pow(en, -1.0 / 5.0), kMinFactor, kMaxFactor);
            if (en <= 1.0) {
                ++traj.accepted_steps;
                traj.accumulated_error += max_abs(err);
                y.swap(ynew);
                k1.swap(k7);
                t = lands ? t_next : t + step;
                // A step shortened to land on a sample does not shrink h.
                h = lands ? std::max(h, step * factor) : step * factor;
            } else {
                ++traj.rejected_steps;
                h = step * std::min(1.0, factor);
            }
        }
        record(s, t);
        // Re-symmetrization changed y; refresh the FSAL stage.
        k1 = stepper.f(y, t);
    }
    return traj;
}

} // namespace genbath
