#include "genbath/run_config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <fmt/format.h>
#include <yaml-cpp/yaml.h>

namespace genbath {

namespace {

template <typename T>
T scalar(const YAML::Node& node, const std::string& key) {
    if (!node.IsScalar()) {
        throw ConfigError(fmt::format("config key '{}' must be a scalar", key));
    }
    try {
        return node.as<T>();
    } catch (const YAML::Exception&) {
        throw ConfigError(fmt::format("config key '{}' has malformed value '{}'", key, node.Scalar()));
    }
}

std::size_t count(const YAML::Node& node, const std::string& key) {
    const auto v = scalar<long long>(node, key);
    if (v < 0) {
        throw ConfigError(fmt::format("config key '{}' must be nonnegative", key));
    }
    return static_cast<std::size_t>(v);
}

} // namespace

const char* to_string(Representation r) {
    return r == Representation::Generalized ? "generalized" : "thermal";
}

const char* to_string(Frame f) { return f == Frame::Rotating ? "rotating" : "lab"; }

void RunConfig::validate() const {
    auto positive = [](double v, const char* key) {
        if (!(v > 0.0) || !std::isfinite(v)) {
            throw ConfigError(fmt::format("{} must be positive and finite", key));
        }
    };
    positive(omega, "omega");
    positive(g, "g");
    positive(gamma, "gamma");
    positive(sample_interval, "sample_interval");
    positive(rtol, "rtol");
    positive(atol, "atol");
    if (n_fock < 2) {
        throw ConfigError("n_fock must be at least 2");
    }
    if (!(t_max >= 0.0) || !std::isfinite(t_max)) {
        throw ConfigError("t_max must be finite and nonnegative");
    }
    if (!(husimi_max > husimi_min)) {
        throw ConfigError("husimi.max must exceed husimi.min");
    }
    if (husimi_points < 2) {
        throw ConfigError("husimi.points must be at least 2");
    }
}

AmplifierConfig RunConfig::amplifier() const {
    AmplifierConfig a;
    a.omega = omega;
    a.g = g;
    a.gamma = gamma;
    a.n_fock = n_fock;
    a.t_max = t_max;
    a.sample_interval = sample_interval;
    a.representation = representation;
    a.frame = frame;
    return a;
}

HusimiGrid RunConfig::husimi_grid() const {
    HusimiGrid grid;
    grid.re_min = grid.im_min = husimi_min;
    grid.re_max = grid.im_max = husimi_max;
    grid.points = husimi_points;
    return grid;
}

nlohmann::ordered_json RunConfig::to_json() const {
    return {
        {"omega", omega},
        {"g", g},
        {"gamma", gamma},
        {"n_fock", n_fock},
        {"t_max", t_max},
        {"sample_interval", sample_interval},
        {"rtol", rtol},
        {"atol", atol},
        {"representation", to_string(representation)},
        {"frame", to_string(frame)},
        {"husimi.min", husimi_min},
        {"husimi.max", husimi_max},
        {"husimi.points", husimi_points},
        {"out_dir", out_dir.string()},
    };
}

RunConfig parse_run_config(const std::string& text) {
    YAML::Node root;
    try {
        root = YAML::Load(text);
    } catch (const YAML::Exception& e) {
        throw ConfigError(fmt::format("config is not valid key-value text: {}", e.what()));
    }
    RunConfig cfg;
    if (root.IsNull()) {
        return cfg;
    }
    if (!root.IsMap()) {
        throw ConfigError("config must be a flat key-value mapping");
    }
    std::set<std::string> seen;
    for (const auto& kv : root) {
        const auto key = kv.first.as<std::string>();
        const YAML::Node& v = kv.second;
        if (!seen.insert(key).second) {
            throw ConfigError(fmt::format("duplicate config key '{}'", key));
        }
        if (key == "omega") {
            cfg.omega = scalar<double>(v, key);
        } else if (key == "g") {
            cfg.g = scalar<double>(v, key);
        } else if (key == "gamma") {
            cfg.gamma = scalar<double>(v, key);
        } else if (key == "n_fock") {
            cfg.n_fock = count(v, key);
        } else if (key == "t_max") {
            cfg.t_max = scalar<double>(v, key);
        } else if (key == "sample_interval") {
            cfg.sample_interval = scalar<double>(v, key);
        } else if (key == "rtol") {
            cfg.rtol = scalar<double>(v, key);
        } else if (key == "atol") {
            cfg.atol = scalar<double>(v, key);
        } else if (key == "representation") {
            const auto s = scalar<std::string>(v, key);
            if (s == "generalized") {
                cfg.representation = Representation::Generalized;
            } else if (s == "thermal") {
                cfg.representation = Representation::Thermal;
            } else {
                throw ConfigError(fmt::format("representation must be generalized|thermal, got '{}'", s));
            }
        } else if (key == "frame") {
            const auto s = scalar<std::string>(v, key);
            if (s == "rotating") {
                cfg.frame = Frame::Rotating;
            } else if (s == "lab") {
                cfg.frame = Frame::Lab;
            } else {
                throw ConfigError(fmt::format("frame must be rotating|lab, got '{}'", s));
            }
        } else if (key == "husimi.min") {
            cfg.husimi_min = scalar<double>(v, key);
        } else if (key == "husimi.max") {
            cfg.husimi_max = scalar<double>(v, key);
        } else if (key == "husimi.points") {
            cfg.husimi_points = count(v, key);
        } else if (key == "out_dir") {
            cfg.out_dir = scalar<std::string>(v, key);
        } else {
            throw ConfigError(fmt::format("unknown config key '{}'", key));
        }
    }
    cfg.validate();
    return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError(fmt::format("cannot read config file '{}'", path.string()));
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_run_config(buf.str());
}

} // namespace genbath
