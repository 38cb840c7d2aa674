#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rcmap/rng.hpp"

namespace rcmap {

// Generator name plus the parameters that produced a series; echoed into CSV
// output so every file is reproducible from its own header.
struct Provenance {
    std::string generator;
    std::map<std::string, std::string> params; // ordered, deterministic output

    bool operator==(const Provenance&) const = default;
};

// Uniformly sampled scalar sequence; row index t doubles as the time index
// shared with ReadoutMatrix.
struct TimeSeries {
    std::vector<double> values;
    double dt = 1.0; // model time units per sample
    double t0 = 0.0;
    Provenance provenance;

    TimeSeries() = default;
    TimeSeries(std::vector<double> v, double dt_in = 1.0, double t0_in = 0.0, Provenance meta = {})
        : values(std::move(v)), dt(dt_in), t0(t0_in), provenance(std::move(meta)) {
        validate();
    }

    std::size_t size() const { return values.size(); }
    double time_at(std::size_t i) const { return t0 + dt * static_cast<double>(i); }

    void validate() const {
        if (values.empty()) throw std::invalid_argument("TimeSeries: length must be >= 1");
        if (!(dt > 0.0)) throw std::invalid_argument("TimeSeries: dt must be > 0");
        for (double v : values)
            if (!std::isfinite(v)) throw std::invalid_argument("TimeSeries: values must be finite");
    }

    bool operator==(const TimeSeries&) const = default;
};

// n i.i.d. samples uniform on [low, high). Identical seed, identical stream.
inline TimeSeries random_signal(std::size_t n, double low, double high, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("random_signal: n must be >= 1");
    if (!(low < high))
        throw std::invalid_argument("random_signal: require low < high, got [" +
                                    std::to_string(low) + ", " + std::to_string(high) + "]");
    Rng rng(seed);
    std::vector<double> v(n);
    for (auto& x : v) x = rng.uniform(low, high);
    Provenance meta;
    meta.generator = "random_uniform";
    meta.params = {{"n", std::to_string(n)},
                   {"low", std::to_string(low)},
                   {"high", std::to_string(high)},
                   {"seed", std::to_string(seed)}};
    return TimeSeries(std::move(v), 1.0, 0.0, std::move(meta));
}

} // namespace rcmap
