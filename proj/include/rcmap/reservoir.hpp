#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rcmap/grains.hpp"
#include "rcmap/layout.hpp"
#include "rcmap/readout.hpp"
#include "rcmap/rng.hpp"
#include "rcmap/series.hpp"

namespace rcmap {

// Raised when a drive pushes readout values past the overflow guard; the
// CLI maps it to a dedicated exit code.
class UnstableRegimeError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class ReservoirModel { tanh_lattice, pinned_particles, delay_line, lti_filter_bank, polynomial_bank };

inline std::string model_name(ReservoirModel model) {
    switch (model) {
        case ReservoirModel::tanh_lattice: return "tanh_lattice";
        case ReservoirModel::pinned_particles: return "pinned_particles";
        case ReservoirModel::delay_line: return "delay_line";
        case ReservoirModel::lti_filter_bank: return "lti_filter_bank";
        case ReservoirModel::polynomial_bank: return "polynomial_bank";
    }
    throw std::invalid_argument("model_name: unknown model");
}

inline ReservoirModel model_from_name(const std::string& name) {
    if (name == "tanh_lattice") return ReservoirModel::tanh_lattice;
    if (name == "pinned_particles") return ReservoirModel::pinned_particles;
    if (name == "delay_line") return ReservoirModel::delay_line;
    if (name == "lti_filter_bank") return ReservoirModel::lti_filter_bank;
    if (name == "polynomial_bank") return ReservoirModel::polynomial_bank;
    throw std::invalid_argument("unknown reservoir model '" + name +
                                "' (expected tanh_lattice, pinned_particles, delay_line, "
                                "lti_filter_bank, or polynomial_bank)");
}

// Everything needed to build a reservoir deterministically. Fields not used
// by the selected model are validated anyway and otherwise ignored.
struct ReservoirSpec {
    ReservoirModel model = ReservoirModel::tanh_lattice;
    std::size_t grid_width = 16;
    std::size_t grid_height = 16;
    double pitch = 1.0;
    DriveConfig drive;

    // tanh lattice
    double coupling = 0.25; // 4-neighbor stencil weight
    double leak = 0.5;      // update fraction per substep, in (0, 1]
    double gain = 1.0;      // uniform gain field value
    std::optional<std::pair<double, double>> gain_gradient; // low -> high along the drive axis

    // pinned particles
    double pin_depth = 1.0;         // well depth scale
    double pin_width = 0.0;         // well width; 0 -> grain mean_size / 3
    std::size_t particle_count = 0; // 0 -> one particle per pinning site

    // lti filter bank
    // log-spaced across nodes; the slow end is chosen so a k=10 delay
    // embedding captures nearly all of the slowest filter's response
    std::pair<double, double> filter_leak_range{0.2, 0.85};

    // polynomial bank
    std::size_t polynomial_degree = 5; // node degrees cycle 2..polynomial_degree

    std::optional<GrainParams> grains; // static disorder (pinned_particles defaults it on)
    std::size_t warmup_steps = 100;    // random-drive samples in initialize()
    std::uint64_t seed = 0;

    void validate() const {
        if (grid_width < 1 || grid_height < 1) throw std::invalid_argument("ReservoirSpec: grid dims must be >= 1");
        if (!(pitch > 0.0) || !std::isfinite(pitch)) throw std::invalid_argument("ReservoirSpec: pitch must be finite and > 0");
        drive.validate();
        if (!std::isfinite(coupling)) throw std::invalid_argument("ReservoirSpec: coupling must be finite");
        if (!(leak > 0.0 && leak <= 1.0)) throw std::invalid_argument("ReservoirSpec: leak must be in (0, 1]");
        if (!(gain > 0.0) || !std::isfinite(gain)) throw std::invalid_argument("ReservoirSpec: gain must be finite and > 0");
        if (gain_gradient) {
            const auto& [lo, hi] = *gain_gradient;
            if (!(lo > 0.0) || !(hi > 0.0) || !std::isfinite(lo) || !std::isfinite(hi))
                throw std::invalid_argument("ReservoirSpec: gain_gradient endpoints must be finite and > 0");
        }
        if (!(pin_depth > 0.0) || !std::isfinite(pin_depth)) throw std::invalid_argument("ReservoirSpec: pin_depth must be finite and > 0");
        if (!(pin_width >= 0.0) || !std::isfinite(pin_width)) throw std::invalid_argument("ReservoirSpec: pin_width must be finite and >= 0");
        const auto& [fl, fh] = filter_leak_range;
        if (!(fl > 0.0 && fl <= 1.0) || !(fh > 0.0 && fh <= 1.0) || fl > fh)
            throw std::invalid_argument("ReservoirSpec: filter_leak_range must satisfy 0 < min <= max <= 1");
        if (polynomial_degree < 2) throw std::invalid_argument("ReservoirSpec: polynomial_degree must be >= 2");
        if (grains) grains->validate();
    }

    SpatialLayout make_layout() const {
        return SpatialLayout::grid(static_cast<int>(grid_width), static_cast<int>(grid_height), pitch);
    }
};

struct RelaxResult {
    std::size_t steps = 0;
    double residual = 0.0;
    bool converged = true;
};

// Common drive/relax/snapshot machinery; concrete models supply the state
// update and the readout projection. An instance is single-threaded by
// contract; run distinct instances for parallel work.
class Reservoir {
public:
    explicit Reservoir(ReservoirSpec spec) : spec_(std::move(spec)) {
        spec_.validate();
        layout_ = spec_.make_layout();
    }
    virtual ~Reservoir() = default;

    const ReservoirSpec& spec() const { return spec_; }
    const SpatialLayout& layout() const { return layout_; }

    // Per-node readout values, length = layout node count.
    std::vector<double> snapshot() const {
        std::vector<double> out(layout_.node_count());
        project(out);
        return out;
    }

    // Reset to the seeded start state, drive with a seeded random warm-up
    // signal, then settle. Deterministic for a given ReservoirSpec and seed.
    RelaxResult initialize() {
        reset_state();
        if (spec_.warmup_steps > 0) {
            const TimeSeries warmup =
                random_signal(spec_.warmup_steps, -1.0, 1.0, derive_seed(spec_.seed, 2));
            for (double u : warmup.values) advance(u);
        }
        return relax();
    }

    // Zero-input settling. Runs until the internal state is bitwise fixed —
    // so a later zero drive cannot move it at all — or flags non-convergence
    // after the step cap. An exact two-step cycle settles on its
    // lexicographically smaller phase, which keeps relax idempotent.
    RelaxResult relax() {
        constexpr std::size_t max_steps = 100000;
        RelaxResult result;
        std::vector<double> prev2, prev, cur = internal_state();
        for (std::size_t step = 0; step < max_steps; ++step) {
            std::swap(prev2, prev);
            std::swap(prev, cur);
            advance(0.0);
            cur = internal_state();
            ++result.steps;
            if (cur == prev) {
                result.residual = 0.0;
                result.converged = true;
                return result;
            }
            if (!prev2.empty() && cur == prev2) {
                result.residual = max_abs_diff(cur, prev);
                result.converged = result.residual < 1e-9;
                if (std::lexicographical_compare(prev.begin(), prev.end(), cur.begin(), cur.end()))
                    set_internal_state(prev);
                return result;
            }
        }
        result.residual = max_abs_diff(cur, prev);
        result.converged = result.residual < 1e-9;
        return result;
    }

    // Feed the signal one sample at a time (each sample held for
    // 1/time_scale model time inside advance) and record the readout after
    // every sample. Aborts if any readout value leaves the overflow guard.
    ReadoutMatrix drive(const TimeSeries& input) {
        const std::size_t t_len = input.values.size();
        const std::size_t n = layout_.node_count();
        ReadoutMatrix out;
        out.data = Matrix(t_len, n);
        out.layout = layout_;
        out.dt = input.dt;
        std::vector<double> row(n);
        for (std::size_t t = 0; t < t_len; ++t) {
            advance(input.values[t]);
            project(row);
            for (std::size_t j = 0; j < n; ++j) {
                if (!std::isfinite(row[j]) || std::fabs(row[j]) > overflow_guard)
                    throw UnstableRegimeError("unstable regime: node " + std::to_string(j) +
                                              " readout left [-1e6, 1e6] at sample " + std::to_string(t));
                out.data(t, j) = row[j];
            }
        }
        return out;
    }

    // Grain disorder actually used by the model, if any.
    virtual const GrainMap* grain_map() const { return nullptr; }

    static constexpr double overflow_guard = 1e6;

protected:
    // Deterministic start state (before any warm-up).
    virtual void reset_state() = 0;
    // Consume one input sample.
    virtual void advance(double u) = 0;
    // Write per-node readout values into out (size = node count).
    virtual void project(std::vector<double>& out) const = 0;
    // Full internal state, flattened; used for settling detection.
    virtual const std::vector<double>& internal_state() const = 0;
    virtual void set_internal_state(std::vector<double> state) = 0;

    static double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
        double m = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::fabs(a[i] - b[i]));
        return m;
    }

    // Substeps that make one input sample last 1/time_scale model time in a
    // discrete-time map.
    std::size_t substeps_per_sample() const {
        const long long n = std::llround(1.0 / spec_.drive.time_scale);
        return static_cast<std::size_t>(std::max<long long>(1, n));
    }

    ReservoirSpec spec_;
    SpatialLayout layout_;
};

} // namespace rcmap
