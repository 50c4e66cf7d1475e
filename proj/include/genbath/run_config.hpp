#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "genbath/amplifier.hpp"
#include "genbath/error.hpp"
#include "genbath/husimi.hpp"

namespace genbath {

class ConfigError : public Error {
public:
    using Error::Error;
};

// Flat key-value run configuration. Times are in units of 1/gamma.
struct RunConfig {
    double omega = 10.0;
    double g = 10.0;
    double gamma = 1.0;
    std::size_t n_fock = 60;
    double t_max = 20.0;
    double sample_interval = 0.05;
    double rtol = 1e-8;
    double atol = 1e-10;
    Representation representation = Representation::Generalized;
    Frame frame = Frame::Rotating;
    double husimi_min = -6.0;
    double husimi_max = 6.0;
    std::size_t husimi_points = 121;
    std::filesystem::path out_dir = ".";

    // Throws ConfigError on invalid values.
    void validate() const;

    AmplifierConfig amplifier() const;
    HusimiGrid husimi_grid() const;
    nlohmann::ordered_json to_json() const;
};

// Parses `key: value` lines (YAML flow-free mapping). Unknown keys, duplicate
// keys and malformed values raise ConfigError.
RunConfig parse_run_config(const std::string& text);
RunConfig load_run_config(const std::filesystem::path& path);

const char* to_string(Representation r);
const char* to_string(Frame f);

} // namespace genbath
