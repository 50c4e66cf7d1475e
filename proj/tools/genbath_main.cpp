#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "genbath/error.hpp"
#include "genbath/run_config.hpp"
#include "genbath/scenarios.hpp"

namespace {

constexpr int kConfigError = 2;
constexpr int kNumericalFailure = 3;
constexpr int kCheckFailure = 4;

int report(const std::vector<genbath::CheckResult>& checks, bool enforce) {
    bool failed = false;
    for (const auto& c : checks) {
        std::cout << genbath::format_check(c) << '\n';
        failed = failed || c.failed();
    }
    return enforce && failed ? kCheckFailure : 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Generalized thermal bath simulator"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    bool check = false;
    std::vector<double> times;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "Run configuration file");
        sub->add_option("--out", out_dir, "Output directory (overrides out_dir)");
        sub->add_flag("--check", check, "Exit with status 4 if an acceptance check fails");
    };

    auto* simulate = app.add_subcommand("simulate", "Integrate and write timeseries.csv, summary.json");
    auto* verify = app.add_subcommand("verify-equivalence", "Compare both representations");
    auto* predict = app.add_subcommand("predict", "Write steady-state predictions.json");
    auto* husimi = app.add_subcommand("husimi", "Write husimi_<t>.csv at sample times");
    auto* check_cmd = app.add_subcommand("check", "Run the acceptance checks");
    for (auto* sub : {simulate, verify, predict, husimi, check_cmd}) {
        add_common(sub);
    }
    husimi->add_option("--times", times, "Comma-separated times in units of 1/gamma")
        ->delimiter(',')
        ->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kConfigError;
    }

    try {
        genbath::RunConfig cfg =
            config_path.empty() ? genbath::RunConfig{} : genbath::load_run_config(config_path);
        if (!out_dir.empty()) {
            cfg.out_dir = out_dir;
        }
        cfg.validate();

        if (simulate->parsed()) {
            const auto outcome = genbath::run_simulate(cfg);
            if (outcome.degraded) {
                std::cerr << "error: run degraded (trace or hermiticity monitor breached)\n";
                return kNumericalFailure;
            }
            return check ? report(outcome.checks, true) : 0;
        }
        if (verify->parsed()) {
            const auto rep = genbath::run_verify_equivalence(cfg);
            std::cout << rep.to_json().dump(2) << '\n';
            if (rep.generalized.degraded || rep.thermal.degraded) {
                std::cerr << "error: run degraded (trace or hermiticity monitor breached)\n";
                return kNumericalFailure;
            }
            return check ? report(rep.checks, true) : 0;
        }
        if (predict->parsed()) {
            std::cout << genbath::run_predict(cfg).dump(2) << '\n';
            return 0;
        }
        if (husimi->parsed()) {
            for (const auto& p : genbath::run_husimi(cfg, times)) {
                std::cout << p.string() << '\n';
            }
            return 0;
        }
        return report(genbath::run_check(cfg), true);
    } catch (const genbath::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfigError;
    } catch (const genbath::InvalidArgument& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfigError;
    } catch (const genbath::Unsupported& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfigError;
    } catch (const genbath::NumericalFailure& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kNumericalFailure;
    } catch (const genbath::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kNumericalFailure;
    }
}
