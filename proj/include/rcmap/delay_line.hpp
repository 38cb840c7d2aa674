#pragma once

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "rcmap/reservoir.hpp"

namespace rcmap {

// Pure shift register with one sample of latency: after consuming u(t),
// node i reads u(t - 1 - i), so an N-node line recalls exactly the last N
// inputs and nothing else. time_scale has no effect — the line shifts once
// per input sample. Useful as a known-answer memory reference.
class DelayLine final : public Reservoir {
public:
    explicit DelayLine(ReservoirSpec spec) : Reservoir(std::move(spec)) {
        // slot 0 stages the newest input; slots 1..N are the node values
        state_.assign(layout_.node_count() + 1, 0.0);
    }

protected:
    void reset_state() override { std::fill(state_.begin(), state_.end(), 0.0); }

    void advance(double u) override {
        for (std::size_t i = state_.size(); i-- > 1;) state_[i] = state_[i - 1];
        state_[0] = spec_.drive.input_gain * u;
    }

    void project(std::vector<double>& out) const override {
        std::copy(state_.begin() + 1, state_.end(), out.begin());
    }

    const std::vector<double>& internal_state() const override { return state_; }

    void set_internal_state(std::vector<double> state) override {
        if (state.size() != state_.size()) throw std::invalid_argument("DelayLine: state size mismatch");
        state_ = std::move(state);
    }

private:
    std::vector<double> state_;
};

} // namespace rcmap
