#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "genbath/amplifier.hpp"
#include "genbath/husimi.hpp"
#include "genbath/run_config.hpp"

namespace genbath {

struct CheckResult {
    enum class Status { Pass, Fail, Skipped };

    std::string id;
    std::string description;
    double value = 0.0;
    double lower = 0.0;
    double upper = 0.0;
    Status status = Status::Skipped;

    bool failed() const { return status == Status::Fail; }
    nlohmann::ordered_json to_json() const;
};

const char* to_string(CheckResult::Status s);
// "[PASS] A1 ..." style line
std::string format_check(const CheckResult& c);

// Integration of one amplifier member with the ledger evaluated per sample.
struct AmplifierRun {
    ThermoSeries series;
    std::vector<SampleMonitor> monitors;
    // Cavity reduced states at the requested sample indices (final sample always).
    std::map<std::size_t, DensityMatrix> cavity_states;
    double n_squared_final = 0.0;
    std::vector<double> n_squared; // <n^2> per sample
    std::size_t accepted_steps = 0;
    std::size_t rejected_steps = 0;
    std::size_t rhs_evaluations = 0;
    double accumulated_error = 0.0;
    bool degraded = false;
};

AmplifierRun run_amplifier(const AmplifierModel& model, Representation member, double rtol,
                           double atol, const std::vector<std::size_t>& capture = {});

void write_timeseries_csv(std::ostream& out, const ThermoSeries& series);
void write_husimi_csv(std::ostream& out, const HusimiGrid& grid);

// Steady window used by the summary: the last quarter of the run.
std::pair<double, double> steady_window(const RunConfig& cfg);

// A1-A7 and A11 evaluated on one run.
std::vector<CheckResult> simulation_checks(const RunConfig& cfg, const ThermoSeries& series,
                                           const DensityMatrix& final_cavity);

struct SimulateOutcome {
    nlohmann::ordered_json summary;
    std::vector<CheckResult> checks;
    bool degraded = false;
};

// Writes timeseries.csv and summary.json into cfg.out_dir.
SimulateOutcome run_simulate(const RunConfig& cfg);

struct EquivalenceReport {
    double max_dn_mean = 0.0;   // max_t |<n>_gen - <n>_th|
    double max_dn_square = 0.0; // max_t |<n^2>_gen - <n^2>_th|
    double max_husimi = 0.0;    // pointwise at t_max
    double max_flip = 0.0;      // max_t |<sz>_gen + <sz>_th|
    AmplifierRun generalized;
    AmplifierRun thermal;
    std::vector<CheckResult> checks; // A8
    nlohmann::ordered_json to_json() const;
};

// Integrates both members independently; writes equivalence.json when
// `write` is set.
EquivalenceReport run_verify_equivalence(
    const RunConfig& cfg, AmplifierConfig::BathUnitary bath = AmplifierConfig::BathUnitary::SigmaX,
    bool write = true);

// Writes predictions.json.
nlohmann::ordered_json run_predict(const RunConfig& cfg);

// Writes husimi_<t>.csv for each requested time (units of 1/gamma).
std::vector<std::filesystem::path> run_husimi(const RunConfig& cfg, const std::vector<double>& times);

// Max deviation of <sigma_z>(t) from 2 exp(-gamma t) - 1 for a decaying qubit
// over gamma t in [0, 5].
double qubit_decay_deviation(double rtol = 1e-8, double atol = 1e-10);

// A1-A9 and A11 on the configured run.
std::vector<CheckResult> run_check(const RunConfig& cfg);

} // namespace genbath
