#include "genbath/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

#include <fmt/format.h>

#include "genbath/integrator.hpp"
#include "genbath/states.hpp"
#include "genbath/steady_window.hpp"

namespace genbath {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

const char* to_string(CheckResult::Status s) {
    switch (s) {
    case CheckResult::Status::Pass:
        return "pass";
    case CheckResult::Status::Fail:
        return "fail";
    case CheckResult::Status::Skipped:
        return "skipped";
    }
    return "unknown";
}

json CheckResult::to_json() const {
    return {{"id", id},       {"description", description}, {"value", value},
            {"lower", lower}, {"upper", upper},             {"status", genbath::to_string(status)}};
}

std::string format_check(const CheckResult& c) {
    const char* tag = c.status == CheckResult::Status::Pass
                          ? "PASS"
                          : (c.status == CheckResult::Status::Fail ? "FAIL" : "SKIP");
    return fmt::format("[{}] {:<14} {:<58} value={:.6e} range=[{:.6g}, {:.6g}]", tag, c.id,
                       c.description, c.value, c.lower, c.upper);
}

namespace {

CheckResult make_check(std::string id, std::string description, double value, double lower,
                       double upper) {
    CheckResult c{std::move(id), std::move(description), value, lower, upper,
                  CheckResult::Status::Fail};
    if (std::isfinite(value) && value >= lower && value <= upper) {
        c.status = CheckResult::Status::Pass;
    }
    return c;
}

CheckResult skipped_check(std::string id, std::string description, double lower, double upper) {
    return {std::move(id), std::move(description), std::numeric_limits<double>::quiet_NaN(), lower,
            upper, CheckResult::Status::Skipped};
}

std::string fmt17(double v) { return fmt::format("{:.17g}", v); }

std::vector<double> column(const ThermoSeries& s, double ThermoRecord::*field) {
    std::vector<double> out;
    out.reserve(s.size());
    for (const auto& r : s) {
        out.push_back(r.*field);
    }
    return out;
}

double max_abs_column(const ThermoSeries& s, double ThermoRecord::*field) {
    double m = 0.0;
    for (const auto& r : s) {
        m = std::max(m, std::abs(r.*field));
    }
    return m;
}

void ensure_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) {
        throw ConfigError(fmt::format("cannot create output directory '{}': {}", dir.string(),
                                      ec.message()));
    }
}

void write_json(const fs::path& path, const json& j) {
    std::ofstream out(path);
    if (!out) {
        throw ConfigError(fmt::format("cannot write '{}'", path.string()));
    }
    out << j.dump(2) << '\n';
}

std::size_t sample_index(const RunConfig& cfg, double time) {
    const double k = std::round(time / cfg.sample_interval);
    const double tol = 1e-9 * std::max(1.0, std::abs(time));
    if (!(time >= 0.0) || std::abs(k * cfg.sample_interval - time) > tol ||
        time > cfg.t_max + tol) {
        throw ConfigError(fmt::format(
            "time {} is not a sample of this run (interval {}, t_max {})", time,
            cfg.sample_interval, cfg.t_max));
    }
    return static_cast<std::size_t>(k);
}

} // namespace

AmplifierRun run_amplifier(const AmplifierModel& model, Representation member, double rtol,
                           double atol, const std::vector<std::size_t>& capture) {
    IntegratorConfig ic = model.integrator_config(rtol, atol);
    ic.store_states = false;
    const auto grid = sample_grid(model.config.t_max_physical(), ic.sample_interval);
    const std::size_t last = grid.size() - 1;

    AmplifierRun run;
    run.series.reserve(grid.size());
    const Trajectory traj = evolve(
        model.pair.member(member), model.initial_state(member), model.config.t_max_physical(), ic,
        [&](std::size_t index, double t, const DensityMatrix& rho, const SampleMonitor& mon) {
            run.series.push_back(record_sample(model, member, t, rho, mon));
            run.monitors.push_back(mon);
            const auto& r = run.series.back();
            run.n_squared.push_back(r.n_var + r.n_mean * r.n_mean);
            if (index == last || std::find(capture.begin(), capture.end(), index) != capture.end()) {
                run.cavity_states.emplace(index, partial_trace(rho, 1));
            }
        });
    run.n_squared_final = run.n_squared.back();
    run.accepted_steps = traj.accepted_steps;
    run.rejected_steps = traj.rejected_steps;
    run.rhs_evaluations = traj.rhs_evaluations;
    run.accumulated_error = traj.accumulated_error;
    run.degraded = traj.degraded;
    return run;
}

void write_timeseries_csv(std::ostream& out, const ThermoSeries& series) {
    out << "t,n_mean,n_var,fano,sigma_z,dn_dt,work_power,heat_power,dHext_dt,dHsys_dt,"
           "residual_first_law,residual_cost_identity,trace_error,leak_top2\n";
    for (const auto& r : series) {
        out << fmt17(r.t) << ',' << fmt17(r.n_mean) << ',' << fmt17(r.n_var) << ','
            << (r.fano ? fmt17(*r.fano) : std::string()) << ',' << fmt17(r.sigma_z) << ','
            << fmt17(r.dn_dt) << ',' << fmt17(r.work_power) << ',' << fmt17(r.heat_power) << ','
            << fmt17(r.dhext_dt) << ',' << fmt17(r.dhsys_dt) << ',' << fmt17(r.residual_first_law)
            << ',' << fmt17(r.residual_cost_identity) << ',' << fmt17(r.trace_error) << ','
            << fmt17(r.leak_top2) << '\n';
    }
}

void write_husimi_csv(std::ostream& out, const HusimiGrid& grid) {
    out << "re,im,q\n";
    for (std::size_t j = 0; j < grid.points; ++j) {
        for (std::size_t i = 0; i < grid.points; ++i) {
            out << fmt17(grid.re(i)) << ',' << fmt17(grid.im(j)) << ',' << fmt17(grid.at(i, j))
                << '\n';
        }
    }
}

std::pair<double, double> steady_window(const RunConfig& cfg) {
    const double t_end = cfg.t_max / cfg.gamma;
    return {0.75 * t_end, t_end};
}

std::vector<CheckResult> simulation_checks(const RunConfig& cfg, const ThermoSeries& series,
                                           const DensityMatrix& final_cavity) {
    const double wg = cfg.omega * cfg.gamma;
    std::vector<CheckResult> out;
    const bool windowed = series.size() >= 2;
    const auto& last = series.back();

    if (windowed) {
        const auto times = column(series, &ThermoRecord::t);
        const auto [ta, tb] = steady_window(cfg);
        auto mean = [&](double ThermoRecord::*field) {
            return detect_steady_window(times, column(series, field), ta, tb).mean;
        };
        out.push_back(make_check("A1", "steady-window mean dn/dt / gamma",
                                 mean(&ThermoRecord::dn_dt) / cfg.gamma, 0.49, 0.51));
        out.push_back(make_check("A2", "|<sigma_z>| at t_max", std::abs(last.sigma_z), 0.0, 0.02));
        out.push_back(make_check("A3", "Fano factor at t_max",
                                 last.fano.value_or(std::numeric_limits<double>::quiet_NaN()),
                                 0.95, 1.05));
        out.push_back(make_check("A4", "steady-window mean work power / (omega gamma)",
                                 mean(&ThermoRecord::work_power) / wg, 0.98, 1.02));
        out.push_back(make_check("A5", "steady-window mean heat power / (omega gamma)",
                                 mean(&ThermoRecord::heat_power) / wg, -0.52, -0.48));
    } else {
        out.push_back(skipped_check("A1", "steady-window mean dn/dt / gamma", 0.49, 0.51));
        out.push_back(skipped_check("A2", "|<sigma_z>| at t_max", 0.0, 0.02));
        out.push_back(skipped_check("A3", "Fano factor at t_max", 0.95, 1.05));
        out.push_back(skipped_check("A4", "steady-window mean work power / (omega gamma)", 0.98, 1.02));
        out.push_back(skipped_check("A5", "steady-window mean heat power / (omega gamma)", -0.52, -0.48));
    }
    out.push_back(make_check("A6", "max |work - 2 dHext/dt| / (omega gamma)",
                             max_abs_column(series, &ThermoRecord::residual_cost_identity) / wg, 0.0,
                             1e-6));
    out.push_back(make_check("A7", "max |first-law residual| / (omega gamma)",
                             max_abs_column(series, &ThermoRecord::residual_first_law) / wg, 0.0,
                             1e-6));
    if (windowed && last.n_mean > 0.5) {
        const HusimiRing ring = husimi_ring(final_cavity, std::max(cfg.husimi_max, 1.0));
        out.push_back(make_check("A11", "Husimi angular variation on the peak circle",
                                 ring.angular_variation, 0.0, 1e-6));
    } else {
        out.push_back(skipped_check("A11", "Husimi angular variation on the peak circle", 0.0, 1e-6));
    }
    return out;
}

SimulateOutcome run_simulate(const RunConfig& cfg) {
    cfg.validate();
    const AmplifierModel model = build_amplifier(cfg.amplifier());
    const AmplifierRun run = run_amplifier(model, cfg.representation, cfg.rtol, cfg.atol);
    const DensityMatrix& final_cavity = run.cavity_states.rbegin()->second;

    ensure_dir(cfg.out_dir);
    {
        std::ofstream csv(cfg.out_dir / "timeseries.csv");
        if (!csv) {
            throw ConfigError("cannot write timeseries.csv");
        }
        write_timeseries_csv(csv, run.series);
    }

    SimulateOutcome outcome;
    outcome.checks = simulation_checks(cfg, run.series, final_cavity);
    outcome.degraded = run.degraded;

    const auto& last = run.series.back();
    json window = json::object();
    if (run.series.size() >= 2) {
        const auto times = column(run.series, &ThermoRecord::t);
        const auto [ta, tb] = steady_window(cfg);
        window["t_a"] = ta;
        window["t_b"] = tb;
        const std::pair<const char*, double ThermoRecord::*> fields[] = {
            {"dn_dt", &ThermoRecord::dn_dt},         {"work_power", &ThermoRecord::work_power},
            {"heat_power", &ThermoRecord::heat_power}, {"dHext_dt", &ThermoRecord::dhext_dt},
            {"dHsys_dt", &ThermoRecord::dhsys_dt},   {"sigma_z", &ThermoRecord::sigma_z},
        };
        for (const auto& [name, field] : fields) {
            const WindowStats w = detect_steady_window(times, column(run.series, field), ta, tb);
            window[name] = {{"mean", w.mean}, {"spread", w.spread}};
        }
    }

    json final_state = {
        {"t", last.t},
        {"n_mean", last.n_mean},
        {"n_var", last.n_var},
        {"fano", last.fano ? json(*last.fano) : json(nullptr)},
        {"sigma_z", last.sigma_z},
    };
    if (last.n_mean > 0.5) {
        const HusimiRing ring = husimi_ring(final_cavity, std::max(cfg.husimi_max, 1.0));
        final_state["husimi_peak_radius"] = ring.peak_radius;
        final_state["husimi_angular_variation"] = ring.angular_variation;
    }
    final_state["husimi_grid_mass"] = husimi_q(final_cavity, cfg.husimi_grid()).mass();

    const SteadyStatePredictions p = steady_state_predictions(model.config);
    double max_herm = 0.0;
    for (const auto& m : run.monitors) {
        max_herm = std::max(max_herm, m.hermiticity_error);
    }

    json checks = json::array();
    for (const auto& c : outcome.checks) {
        checks.push_back(c.to_json());
    }

    outcome.summary = {
        {"config", cfg.to_json()},
        {"steady_window", window},
        {"final", final_state},
        {"predictions",
         {{"dn_dt", p.dn_dt},
          {"sigma_z", p.sigma_z},
          {"dHext_dt", p.dhext_dt},
          {"dHsys_dt", p.dhsys_dt},
          {"work_power", p.work_power},
          {"heat_power", p.heat_power},
          {"fano", p.fano},
          {"correlator_re", p.correlator_re}}},
        {"residual_maxima",
         {{"residual_first_law", max_abs_column(run.series, &ThermoRecord::residual_first_law)},
          {"residual_cost_identity",
           max_abs_column(run.series, &ThermoRecord::residual_cost_identity)}}},
        {"monitor_maxima",
         {{"trace_error", max_abs_column(run.series, &ThermoRecord::trace_error)},
          {"hermiticity_error", max_herm},
          {"leak_top2", max_abs_column(run.series, &ThermoRecord::leak_top2)}}},
        {"integrator",
         {{"accepted_steps", run.accepted_steps},
          {"rejected_steps", run.rejected_steps},
          {"rhs_evaluations", run.rhs_evaluations},
          {"accumulated_error", run.accumulated_error}}},
        {"degraded", run.degraded},
        {"checks", checks},
    };
    write_json(cfg.out_dir / "summary.json", outcome.summary);
    return outcome;
}

json EquivalenceReport::to_json() const {
    json checks_json = json::array();
    for (const auto& c : checks) {
        checks_json.push_back(c.to_json());
    }
    return {
        {"max_abs_diff_n_mean", max_dn_mean},
        {"max_abs_diff_n_squared", max_dn_square},
        {"max_abs_diff_husimi_t_max", max_husimi},
        {"max_qubit_flip_residual", max_flip},
        {"checks", checks_json},
    };
}

EquivalenceReport run_verify_equivalence(const RunConfig& cfg, AmplifierConfig::BathUnitary bath,
                                         bool write) {
    cfg.validate();
    AmplifierConfig acfg = cfg.amplifier();
    acfg.bath_unitary = bath;
    const AmplifierModel model = build_amplifier(acfg);

    EquivalenceReport rep;
    rep.generalized = run_amplifier(model, Representation::Generalized, cfg.rtol, cfg.atol);
    rep.thermal = run_amplifier(model, Representation::Thermal, cfg.rtol, cfg.atol);

    const auto& gs = rep.generalized.series;
    const auto& ts = rep.thermal.series;
    for (std::size_t k = 0; k < gs.size(); ++k) {
        rep.max_dn_mean = std::max(rep.max_dn_mean, std::abs(gs[k].n_mean - ts[k].n_mean));
        rep.max_dn_square = std::max(
            rep.max_dn_square, std::abs(rep.generalized.n_squared[k] - rep.thermal.n_squared[k]));
        rep.max_flip = std::max(rep.max_flip, std::abs(gs[k].sigma_z + ts[k].sigma_z));
    }
    const HusimiGrid qg = husimi_q(rep.generalized.cavity_states.rbegin()->second, cfg.husimi_grid());
    const HusimiGrid qt = husimi_q(rep.thermal.cavity_states.rbegin()->second, cfg.husimi_grid());
    for (std::size_t k = 0; k < qg.values.size(); ++k) {
        rep.max_husimi = std::max(rep.max_husimi, std::abs(qg.values[k] - qt.values[k]));
    }

    rep.checks.push_back(make_check("A8.n_mean", "max |<n>_gen - <n>_th| over samples",
                                    rep.max_dn_mean, 0.0, 1e-6));
    rep.checks.push_back(make_check("A8.husimi", "max pointwise Husimi difference at t_max",
                                    rep.max_husimi, 0.0, 1e-8));
    if (bath == AmplifierConfig::BathUnitary::SigmaX) {
        rep.checks.push_back(make_check("A8.qubit_flip", "max |<sz>_gen + <sz>_th| over samples",
                                        rep.max_flip, 0.0, 1e-6));
    } else {
        rep.checks.push_back(
            skipped_check("A8.qubit_flip", "max |<sz>_gen + <sz>_th| over samples", 0.0, 1e-6));
    }

    if (write) {
        ensure_dir(cfg.out_dir);
        json j = rep.to_json();
        j["config"] = cfg.to_json();
        write_json(cfg.out_dir / "equivalence.json", j);
    }
    return rep;
}

json run_predict(const RunConfig& cfg) {
    cfg.validate();
    const SteadyStatePredictions p = steady_state_predictions(cfg.amplifier());
    const double wg = cfg.omega * cfg.gamma;
    json j = {
        {"config", cfg.to_json()},
        {"predictions",
         {{"dn_dt", p.dn_dt},
          {"sigma_z", p.sigma_z},
          {"dHext_dt", p.dhext_dt},
          {"dHsys_dt", p.dhsys_dt},
          {"work_power", p.work_power},
          {"heat_power", p.heat_power},
          {"fano", p.fano},
          {"correlator_re", p.correlator_re}}},
        {"normalized",
         {{"work_power_over_omega_gamma", p.work_power / wg},
          {"heat_power_over_omega_gamma", p.heat_power / wg},
          {"dHext_dt_over_omega_gamma", p.dhext_dt / wg},
          {"dn_dt_over_gamma", p.dn_dt / cfg.gamma}}},
    };
    ensure_dir(cfg.out_dir);
    write_json(cfg.out_dir / "predictions.json", j);
    return j;
}

std::vector<fs::path> run_husimi(const RunConfig& cfg, const std::vector<double>& times) {
    cfg.validate();
    if (times.empty()) {
        throw ConfigError("husimi needs at least one time");
    }
    std::vector<std::size_t> indices;
    for (double t : times) {
        indices.push_back(sample_index(cfg, t));
    }
    const AmplifierModel model = build_amplifier(cfg.amplifier());
    const AmplifierRun run = run_amplifier(model, cfg.representation, cfg.rtol, cfg.atol, indices);

    ensure_dir(cfg.out_dir);
    std::vector<fs::path> written;
    for (std::size_t k = 0; k < times.size(); ++k) {
        const HusimiGrid grid = husimi_q(run.cavity_states.at(indices[k]), cfg.husimi_grid());
        const fs::path path = cfg.out_dir / fmt::format("husimi_{}.csv", times[k]);
        std::ofstream out(path);
        if (!out) {
            throw ConfigError(fmt::format("cannot write '{}'", path.string()));
        }
        write_husimi_csv(out, grid);
        written.push_back(path);
    }
    return written;
}

double qubit_decay_deviation(double rtol, double atol) {
    const MasterEquation me(ScheduledOperator(Operator::zero(qubit::space())),
                            {ScheduledChannel(Channel(qubit::sigma_minus(), 1.0, "decay"))});
    IntegratorConfig ic;
    ic.rtol = rtol;
    ic.atol = atol;
    ic.sample_interval = 0.05;
    ic.store_states = false;
    const Operator sz = qubit::sigma_z();
    double worst = 0.0;
    evolve(me, DensityMatrix(qubit::excited_projector()), 5.0, ic,
           [&](std::size_t, double t, const DensityMatrix& rho, const SampleMonitor&) {
               const double exact = 2.0 * std::exp(-t) - 1.0;
               worst = std::max(worst, std::abs(expectation_real(sz, rho) - exact));
           });
    return worst;
}

std::vector<CheckResult> run_check(const RunConfig& cfg) {
    const EquivalenceReport rep = run_verify_equivalence(cfg);
    const AmplifierRun& primary =
        cfg.representation == Representation::Generalized ? rep.generalized : rep.thermal;
    std::vector<CheckResult> out =
        simulation_checks(cfg, primary.series, primary.cavity_states.rbegin()->second);
    out.insert(out.end(), rep.checks.begin(), rep.checks.end());
    out.push_back(make_check("A9", "qubit decay vs 2 exp(-gamma t) - 1, gamma t in [0, 5]",
                             qubit_decay_deviation(cfg.rtol, cfg.atol), 0.0, 1e-8));
    std::stable_sort(out.begin(), out.end(), [](const CheckResult& a, const CheckResult& b) {
        auto num = [](const std::string& id) { return std::stoi(id.substr(1)); };
        return num(a.id) < num(b.id);
    });
    return out;
}

} // namespace genbath
