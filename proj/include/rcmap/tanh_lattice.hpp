#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include "rcmap/reservoir.hpp"

namespace rcmap {

// Per-node position projected onto the given axis, min-max normalized to
// [0, 1]. Degenerate layouts (all nodes at one projection) map to 0.5.
inline std::vector<double> axis_projection(const SpatialLayout& layout,
                                           const std::array<double, 2>& direction) {
    const std::size_t n = layout.node_count();
    std::vector<double> proj(n);
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (std::size_t i = 0; i < n; ++i) {
        proj[i] = layout.nodes[i].x * direction[0] + layout.nodes[i].y * direction[1];
        lo = std::min(lo, proj[i]);
        hi = std::max(hi, proj[i]);
    }
    if (hi - lo <= 0.0) {
        std::fill(proj.begin(), proj.end(), 0.5);
        return proj;
    }
    for (double& p : proj) p = (p - lo) / (hi - lo);
    return proj;
}

// Leaky tanh map on a rectangular lattice with zero-flux 4-neighbor
// coupling:
//   x <- (1 - leak) x + leak tanh(g . (coupling * sum_nb x + input_gain * u * mask))
// The gain field g is uniform, a low->high ramp along the drive axis, or
// grain-modulated; the input mask ramps 0.5 -> 1 along the same axis so
// every node stays coupled to the input. Readout is the state itself.
class TanhLattice final : public Reservoir {
public:
    explicit TanhLattice(ReservoirSpec spec) : Reservoir(std::move(spec)) {
        const std::size_t n = layout_.node_count();
        if (spec_.grains) grains_ = voronoi_grains(layout_, *spec_.grains, derive_seed(spec_.seed, 1));
        const std::vector<double> proj = axis_projection(layout_, spec_.drive.direction);
        gain_field_.resize(n);
        mask_.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            double g = spec_.gain;
            if (spec_.gain_gradient)
                g = spec_.gain_gradient->first + (spec_.gain_gradient->second - spec_.gain_gradient->first) * proj[i];
            if (grains_) g *= grains_->node_multiplier[i];
            gain_field_[i] = g;
            mask_[i] = 0.5 + 0.5 * proj[i];
        }
        state_.assign(n, 0.0);
        scratch_.resize(n);
    }

    const GrainMap* grain_map() const override { return grains_ ? &*grains_ : nullptr; }
    const std::vector<double>& gain_field() const { return gain_field_; }

protected:
    void reset_state() override { std::fill(state_.begin(), state_.end(), 0.0); }

    void advance(double u) override {
        const std::size_t sub = substeps_per_sample();
        const double drive_term = spec_.drive.input_gain * u;
        const int w = layout_.grid_width, h = layout_.grid_height;
        for (std::size_t s = 0; s < sub; ++s) {
            for (int y = 0; y < h; ++y) {
                for (int x = 0; x < w; ++x) {
                    const std::size_t i = static_cast<std::size_t>(y) * w + x;
                    double nb = 0.0;
                    if (x > 0) nb += state_[i - 1];
                    if (x + 1 < w) nb += state_[i + 1];
                    if (y > 0) nb += state_[i - w];
                    if (y + 1 < h) nb += state_[i + w];
                    const double pre = gain_field_[i] * (spec_.coupling * nb + drive_term * mask_[i]);
                    scratch_[i] = (1.0 - spec_.leak) * state_[i] + spec_.leak * std::tanh(pre);
                }
            }
            state_.swap(scratch_);
        }
    }

    void project(std::vector<double>& out) const override {
        std::copy(state_.begin(), state_.end(), out.begin());
    }

    const std::vector<double>& internal_state() const override { return state_; }

    void set_internal_state(std::vector<double> state) override {
        if (state.size() != state_.size()) throw std::invalid_argument("TanhLattice: state size mismatch");
        state_ = std::move(state);
    }

private:
    std::vector<double> state_, scratch_, gain_field_, mask_;
    std::optional<GrainMap> grains_;
};

} // namespace rcmap
