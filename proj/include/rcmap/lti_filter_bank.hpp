#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "rcmap/reservoir.hpp"

namespace rcmap {

// Bank of first-order leaky integrators, one per node:
//   x_i <- (1 - lambda_i) x_i + lambda_i * input_gain * u
// with lambda_i log-spaced across filter_leak_range. Strictly linear time-
// invariant dynamics: plenty of memory at a spread of time constants, zero
// nonlinearity. Readout is the state itself.
class LtiFilterBank final : public Reservoir {
public:
    explicit LtiFilterBank(ReservoirSpec spec) : Reservoir(std::move(spec)) {
        const std::size_t n = layout_.node_count();
        leaks_.resize(n);
        const double log_lo = std::log(spec_.filter_leak_range.first);
        const double log_hi = std::log(spec_.filter_leak_range.second);
        for (std::size_t i = 0; i < n; ++i) {
            const double f = n > 1 ? static_cast<double>(i) / static_cast<double>(n - 1) : 0.5;
            leaks_[i] = std::exp(log_lo + (log_hi - log_lo) * f);
        }
        state_.assign(n, 0.0);
    }

    const std::vector<double>& leaks() const { return leaks_; }

protected:
    void reset_state() override { std::fill(state_.begin(), state_.end(), 0.0); }

    void advance(double u) override {
        const std::size_t sub = substeps_per_sample();
        const double drive_term = spec_.drive.input_gain * u;
        for (std::size_t s = 0; s < sub; ++s)
            for (std::size_t i = 0; i < state_.size(); ++i)
                state_[i] = (1.0 - leaks_[i]) * state_[i] + leaks_[i] * drive_term;
    }

    void project(std::vector<double>& out) const override {
        std::copy(state_.begin(), state_.end(), out.begin());
    }

    const std::vector<double>& internal_state() const override { return state_; }

    void set_internal_state(std::vector<double> state) override {
        if (state.size() != state_.size()) throw std::invalid_argument("LtiFilterBank: state size mismatch");
        state_ = std::move(state);
    }

private:
    std::vector<double> state_, leaks_;
};

} // namespace rcmap
