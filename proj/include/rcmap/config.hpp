#pragma once

#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "rcmap/mackey_glass.hpp"
#include "rcmap/reservoir.hpp"

namespace rcmap {

// Configuration problems get their own type so the CLI can map them to a
// dedicated exit code; messages always name the offending field.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct SignalSpec {
    enum class Kind { random, mackey_glass, file };
    Kind kind = Kind::random;
    // kind == random
    std::size_t length = 1500;
    double low = -1.0;
    double high = 1.0;
    // kind == mackey_glass
    MackeyGlassParams mg;
    std::size_t discard = 200; // leading transient samples dropped before use
    // kind == file
    std::string path;
};

struct MetricParams {
    std::size_t k = 20;
    double threshold_distance = 2.0;
    std::size_t washout = 500;
};

struct BenchmarkVariant {
    std::string name;
    ReservoirSpec reservoir;
};

struct TaskParams {
    std::size_t k_max = 50;
    // empty -> a canonical low / high / gradient trio derived from the run's
    // base reservoir
    std::vector<BenchmarkVariant> variants;
};

// One experiment, fully serializable; the copy echoed into the output
// directory reproduces the run byte for byte.
struct RunConfig {
    static constexpr int current_version = 1;

    int config_version = current_version;
    std::string experiment = "run";
    std::uint64_t seed = 0;
    std::string output_dir = "out";
    ReservoirSpec reservoir;
    SignalSpec signal;
    MetricParams metrics;
    TaskParams task;

    void validate() const {
        if (config_version != current_version)
            throw ConfigError("config field 'config_version': expected " + std::to_string(current_version));
        if (metrics.k < 1)
            throw ConfigError("config field 'metrics.k': memory capacity requires k >= 1");
        if (!(metrics.threshold_distance >= 0.0))
            throw ConfigError("config field 'metrics.threshold_distance': must be >= 0");
        if (task.k_max < 1) throw ConfigError("config field 'task.k_max': must be >= 1");
        if (signal.kind == SignalSpec::Kind::random && signal.length < 1)
            throw ConfigError("config field 'signal.length': must be >= 1");
        if (signal.kind == SignalSpec::Kind::random && !(signal.low < signal.high))
            throw ConfigError("config field 'signal.low': must be strictly below signal.high");
        if (signal.kind == SignalSpec::Kind::file && signal.path.empty())
            throw ConfigError("config field 'signal.path': must name a CSV file");
        try {
            if (signal.kind == SignalSpec::Kind::mackey_glass) signal.mg.validate();
            reservoir.validate();
        } catch (const std::invalid_argument& e) {
            throw ConfigError(std::string("config: ") + e.what());
        }
        for (const BenchmarkVariant& variant : task.variants) {
            if (variant.name.empty() || variant.name == "persistence")
                throw ConfigError("config field 'task.variants.name': must be non-empty and not 'persistence'");
            try {
                variant.reservoir.validate();
            } catch (const std::invalid_argument& e) {
                throw ConfigError("config field 'task.variants." + variant.name + "': " + e.what());
            }
        }
    }
};

namespace detail {

using nlohmann::json;

inline void check_keys(const json& j, const std::string& where, std::initializer_list<const char*> allowed) {
    if (!j.is_object()) throw ConfigError("config field '" + where + "': expected an object");
    for (const auto& item : j.items()) {
        bool known = false;
        for (const char* key : allowed)
            if (item.key() == key) known = true;
        if (!known) throw ConfigError("config field '" + where + "." + item.key() + "': unknown field");
    }
}

template <typename T>
T get_or(const json& j, const std::string& where, const char* name, T fallback) {
    if (!j.contains(name)) return fallback;
    try {
        return j.at(name).get<T>();
    } catch (const json::exception&) {
        throw ConfigError("config field '" + where + "." + name + "': wrong type");
    }
}

inline std::array<double, 2> get_pair(const json& j, const std::string& where, const char* name,
                                      std::array<double, 2> fallback) {
    if (!j.contains(name)) return fallback;
    const json& v = j.at(name);
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
        throw ConfigError("config field '" + where + "." + name + "': expected [number, number]");
    return {v[0].get<double>(), v[1].get<double>()};
}

inline json reservoir_to_json(const ReservoirSpec& spec) {
    json j;
    j["model"] = model_name(spec.model);
    j["grid_width"] = spec.grid_width;
    j["grid_height"] = spec.grid_height;
    j["pitch"] = spec.pitch;
    j["input_gain"] = spec.drive.input_gain;
    j["time_scale"] = spec.drive.time_scale;
    j["direction"] = spec.drive.direction;
    j["coupling"] = spec.coupling;
    j["leak"] = spec.leak;
    j["gain"] = spec.gain;
    if (spec.gain_gradient)
        j["gain_gradient"] = {spec.gain_gradient->first, spec.gain_gradient->second};
    else
        j["gain_gradient"] = nullptr;
    j["pin_depth"] = spec.pin_depth;
    j["pin_width"] = spec.pin_width;
    j["particle_count"] = spec.particle_count;
    j["filter_leak_range"] = {spec.filter_leak_range.first, spec.filter_leak_range.second};
    j["polynomial_degree"] = spec.polynomial_degree;
    if (spec.grains) {
        j["grains"] = {{"mean_size", spec.grains->mean_size},
                       {"variance_fraction", spec.grains->variance_fraction}};
    } else {
        j["grains"] = nullptr;
    }
    j["warmup_steps"] = spec.warmup_steps;
    return j;
}

inline ReservoirSpec reservoir_from_json(const json& j, const std::string& where) {
    check_keys(j, where,
               {"model", "grid_width", "grid_height", "pitch", "input_gain", "time_scale", "direction",
                "coupling", "leak", "gain", "gain_gradient", "pin_depth", "pin_width", "particle_count",
                "filter_leak_range", "polynomial_degree", "grains", "warmup_steps"});
    ReservoirSpec spec;
    if (j.contains("model")) {
        try {
            spec.model = model_from_name(j.at("model").get<std::string>());
        } catch (const std::exception& e) {
            throw ConfigError("config field '" + where + ".model': " + e.what());
        }
    }
    spec.grid_width = get_or<std::size_t>(j, where, "grid_width", spec.grid_width);
    spec.grid_height = get_or<std::size_t>(j, where, "grid_height", spec.grid_height);
    spec.pitch = get_or<double>(j, where, "pitch", spec.pitch);
    spec.drive.input_gain = get_or<double>(j, where, "input_gain", spec.drive.input_gain);
    spec.drive.time_scale = get_or<double>(j, where, "time_scale", spec.drive.time_scale);
    spec.drive.direction = get_pair(j, where, "direction", spec.drive.direction);
    spec.coupling = get_or<double>(j, where, "coupling", spec.coupling);
    spec.leak = get_or<double>(j, where, "leak", spec.leak);
    spec.gain = get_or<double>(j, where, "gain", spec.gain);
    if (j.contains("gain_gradient") && !j.at("gain_gradient").is_null()) {
        const auto g = get_pair(j, where, "gain_gradient", {0.0, 0.0});
        spec.gain_gradient = {g[0], g[1]};
    }
    spec.pin_depth = get_or<double>(j, where, "pin_depth", spec.pin_depth);
    spec.pin_width = get_or<double>(j, where, "pin_width", spec.pin_width);
    spec.particle_count = get_or<std::size_t>(j, where, "particle_count", spec.particle_count);
    const auto fl = get_pair(j, where, "filter_leak_range",
                             {spec.filter_leak_range.first, spec.filter_leak_range.second});
    spec.filter_leak_range = {fl[0], fl[1]};
    spec.polynomial_degree = get_or<std::size_t>(j, where, "polynomial_degree", spec.polynomial_degree);
    if (j.contains("grains") && !j.at("grains").is_null()) {
        const json& g = j.at("grains");
        check_keys(g, where + ".grains", {"mean_size", "variance_fraction"});
        GrainParams params;
        params.mean_size = get_or<double>(g, where + ".grains", "mean_size", params.mean_size);
        params.variance_fraction =
            get_or<double>(g, where + ".grains", "variance_fraction", params.variance_fraction);
        spec.grains = params;
    }
    spec.warmup_steps = get_or<std::size_t>(j, where, "warmup_steps", spec.warmup_steps);
    return spec;
}

inline json signal_to_json(const SignalSpec& spec) {
    json j;
    switch (spec.kind) {
        case SignalSpec::Kind::random:
            j["kind"] = "random";
            j["length"] = spec.length;
            j["low"] = spec.low;
            j["high"] = spec.high;
            break;
        case SignalSpec::Kind::mackey_glass:
            j["kind"] = "mackey_glass";
            j["a"] = spec.mg.a;
            j["b"] = spec.mg.b;
            j["n"] = spec.mg.n;
            j["tau"] = spec.mg.tau;
            j["dt"] = spec.mg.dt;
            j["t_end"] = spec.mg.t_end;
            j["history_init"] = spec.mg.history_init;
            j["discard"] = spec.discard;
            break;
        case SignalSpec::Kind::file:
            j["kind"] = "file";
            j["path"] = spec.path;
            break;
    }
    return j;
}

inline SignalSpec signal_from_json(const json& j, const std::string& where) {
    if (!j.is_object() || !j.contains("kind"))
        throw ConfigError("config field '" + where + ".kind': required (random, mackey_glass, or file)");
    std::string kind;
    try {
        kind = j.at("kind").get<std::string>();
    } catch (const json::exception&) {
        throw ConfigError("config field '" + where + ".kind': expected a string");
    }
    SignalSpec spec;
    if (kind == "random") {
        check_keys(j, where, {"kind", "length", "low", "high"});
        spec.kind = SignalSpec::Kind::random;
        spec.length = get_or<std::size_t>(j, where, "length", spec.length);
        spec.low = get_or<double>(j, where, "low", spec.low);
        spec.high = get_or<double>(j, where, "high", spec.high);
    } else if (kind == "mackey_glass") {
        check_keys(j, where, {"kind", "a", "b", "n", "tau", "dt", "t_end", "history_init", "discard"});
        spec.kind = SignalSpec::Kind::mackey_glass;
        spec.mg.a = get_or<double>(j, where, "a", spec.mg.a);
        spec.mg.b = get_or<double>(j, where, "b", spec.mg.b);
        spec.mg.n = get_or<double>(j, where, "n", spec.mg.n);
        spec.mg.tau = get_or<double>(j, where, "tau", spec.mg.tau);
        spec.mg.dt = get_or<double>(j, where, "dt", spec.mg.dt);
        spec.mg.t_end = get_or<double>(j, where, "t_end", spec.mg.t_end);
        spec.mg.history_init = get_or<double>(j, where, "history_init", spec.mg.history_init);
        spec.discard = get_or<std::size_t>(j, where, "discard", spec.discard);
    } else if (kind == "file") {
        check_keys(j, where, {"kind", "path"});
        spec.kind = SignalSpec::Kind::file;
        spec.path = get_or<std::string>(j, where, "path", "");
    } else {
        throw ConfigError("config field '" + where + ".kind': unknown kind '" + kind + "'");
    }
    return spec;
}

} // namespace detail

inline nlohmann::json config_to_json(const RunConfig& config) {
    nlohmann::json j;
    j["config_version"] = config.config_version;
    j["experiment"] = config.experiment;
    j["seed"] = config.seed;
    j["output_dir"] = config.output_dir;
    j["reservoir"] = detail::reservoir_to_json(config.reservoir);
    j["signal"] = detail::signal_to_json(config.signal);
    j["metrics"] = {{"k", config.metrics.k},
                    {"threshold_distance", config.metrics.threshold_distance},
                    {"washout", config.metrics.washout}};
    nlohmann::json task;
    task["k_max"] = config.task.k_max;
    task["variants"] = nlohmann::json::array();
    for (const BenchmarkVariant& variant : config.task.variants)
        task["variants"].push_back(
            {{"name", variant.name}, {"reservoir", detail::reservoir_to_json(variant.reservoir)}});
    j["task"] = task;
    return j;
}

inline RunConfig config_from_json(const nlohmann::json& j) {
    detail::check_keys(j, "config",
                       {"config_version", "experiment", "seed", "output_dir", "reservoir", "signal",
                        "metrics", "task"});
    RunConfig config;
    config.config_version = detail::get_or<int>(j, "config", "config_version", config.config_version);
    config.experiment = detail::get_or<std::string>(j, "config", "experiment", config.experiment);
    config.seed = detail::get_or<std::uint64_t>(j, "config", "seed", config.seed);
    config.output_dir = detail::get_or<std::string>(j, "config", "output_dir", config.output_dir);
    if (j.contains("reservoir")) config.reservoir = detail::reservoir_from_json(j.at("reservoir"), "reservoir");
    if (!j.contains("signal")) throw ConfigError("config field 'signal': required");
    config.signal = detail::signal_from_json(j.at("signal"), "signal");
    if (j.contains("metrics")) {
        const nlohmann::json& m = j.at("metrics");
        detail::check_keys(m, "metrics", {"k", "threshold_distance", "washout"});
        config.metrics.k = detail::get_or<std::size_t>(m, "metrics", "k", config.metrics.k);
        config.metrics.threshold_distance =
            detail::get_or<double>(m, "metrics", "threshold_distance", config.metrics.threshold_distance);
        config.metrics.washout = detail::get_or<std::size_t>(m, "metrics", "washout", config.metrics.washout);
    }
    if (j.contains("task")) {
        const nlohmann::json& t = j.at("task");
        detail::check_keys(t, "task", {"k_max", "variants"});
        config.task.k_max = detail::get_or<std::size_t>(t, "task", "k_max", config.task.k_max);
        if (t.contains("variants")) {
            if (!t.at("variants").is_array())
                throw ConfigError("config field 'task.variants': expected an array");
            for (const nlohmann::json& v : t.at("variants")) {
                detail::check_keys(v, "task.variants", {"name", "reservoir"});
                BenchmarkVariant variant;
                variant.name = detail::get_or<std::string>(v, "task.variants", "name", "");
                if (v.contains("reservoir"))
                    variant.reservoir = detail::reservoir_from_json(v.at("reservoir"), "task.variants.reservoir");
                config.task.variants.push_back(std::move(variant));
            }
        }
    }
    config.validate();
    return config;
}

// Canonical serialized form: sorted keys, two-space indent, trailing
// newline. Re-serializing a parsed config reproduces it byte for byte.
inline std::string config_to_string(const RunConfig& config) { return config_to_json(config).dump(2) + "\n"; }

inline RunConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config file: " + path);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError("config parse error in " + path + ": " + e.what());
    }
    return config_from_json(j);
}

inline void save_config(const std::string& path, const RunConfig& config) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << config_to_string(config);
    if (!out) throw std::runtime_error("write failed: " + path);
}

} // namespace rcmap
