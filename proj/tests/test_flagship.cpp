#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "genbath/amplifier.hpp"
#include "genbath/husimi.hpp"
#include "genbath/integrator.hpp"
#include "genbath/steady_window.hpp"

using namespace genbath;

TEST_CASE("flagship amplifier at gamma t = 20") {
    const AmplifierConfig cfg; // g / gamma = 10, omega = 10, 60 Fock levels
    const AmplifierModel m = build_amplifier(cfg);
    const double wg = cfg.omega * cfg.gamma;

    ThermoSeries series;
    std::optional<DensityMatrix> last;
    const Trajectory traj = evolve(
        m.pair.generalized, m.initial_state(Representation::Generalized), cfg.t_max_physical(),
        [&] {
            IntegratorConfig ic = m.integrator_config(1e-8, 1e-10);
            ic.store_states = false;
            return ic;
        }(),
        [&](std::size_t, double t, const DensityMatrix& rho, const SampleMonitor& mon) {
            series.push_back(record_sample(m, Representation::Generalized, t, rho, mon));
            last = rho;
        });
    REQUIRE(last.has_value());
    CHECK_FALSE(traj.degraded);

    std::vector<double> t, n, dhext, dhsys;
    for (const auto& r : series) {
        t.push_back(r.t);
        n.push_back(r.n_mean);
        dhext.push_back(r.dhext_dt);
        dhsys.push_back(r.dhsys_dt);
    }

    {
        INFO("photon number grows monotonically and linearly at late times");
        for (std::size_t k = 1; k < n.size(); ++k) {
            CHECK(n[k] >= n[k - 1] - 1e-10);
        }
        // secant slope over gamma t in [15, 20]
        const double slope = (n.back() - n[300]) / (t.back() - t[300]);
        CHECK(slope == doctest::Approx(0.5 * cfg.gamma).epsilon(0.02));
    }

    {
        INFO("Hamiltonian energy flows in the steady window");
        const WindowStats ext = detect_steady_window(t, dhext, 15.0, 20.0);
        const WindowStats sys = detect_steady_window(t, dhsys, 15.0, 20.0);
        CHECK(ext.mean / wg == doctest::Approx(0.5).epsilon(0.02));
        CHECK(std::abs(sys.mean) / wg <= 0.02);
    }

    {
        INFO("thermal-representation correlator matches the steady-state value");
        const DensityMatrix th = m.pair.to_thermal(*last, cfg.t_max_physical());
        const double corr = expectation(m.sigma_minus_a, th).real();
        CHECK(corr == doctest::Approx(steady_state_predictions(cfg).correlator_re).epsilon(0.02));
        CHECK(corr == doctest::Approx(-0.025).epsilon(0.02));
    }

    {
        INFO("Husimi ring and normalization");
        const DensityMatrix cavity = partial_trace(*last, 1);
        const HusimiRing ring = husimi_ring(cavity, 6.0);
        const double radius = std::sqrt(series.back().n_mean);
        CHECK(std::abs(ring.peak_radius - radius) <= 0.1 * radius);
        CHECK(ring.angular_variation <= 1e-6);
        const HusimiGrid grid = husimi_q(cavity, HusimiGrid{});
        CHECK(std::abs(grid.mass() - 1.0) <= 1e-3);
    }
}
