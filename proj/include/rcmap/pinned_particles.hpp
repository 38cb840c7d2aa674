#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "rcmap/reservoir.hpp"

namespace rcmap {

// Overdamped particles in a disordered pinning landscape. Each grain site
// carries a Gaussian well whose depth scales with the grain multiplier;
// particles follow position += dt * (input_gain * u * direction - grad V).
// Weakly pinned particles hop between wells under a strong drive and stay
// put under a weak one, which is what the stability metric is built to see.
// Readout: per layout cell, a Gaussian-kernel particle-density proxy
// evaluated at the cell center (kernel width = one cell).
class PinnedParticles final : public Reservoir {
public:
    explicit PinnedParticles(ReservoirSpec spec) : Reservoir(std::move(spec)) {
        const GrainParams grain_params = spec_.grains.value_or(GrainParams{});
        grains_ = voronoi_grains(layout_, grain_params, derive_seed(spec_.seed, 1));
        sigma_ = spec_.pin_width > 0.0 ? spec_.pin_width : grain_params.mean_size / 3.0;
        depths_.resize(grains_.site_count());
        double depth_max = 0.0;
        for (std::size_t s = 0; s < depths_.size(); ++s) {
            depths_[s] = spec_.pin_depth * grains_.site_multiplier[s];
            depth_max = std::max(depth_max, depths_[s]);
        }
        // stability bound for explicit Euler: a tenth of the stiffest well's
        // time constant sigma^2 / depth
        dt_max_ = 0.1 * sigma_ * sigma_ / depth_max;
        domain_ = {static_cast<double>(layout_.grid_width) * layout_.pitch,
                   static_cast<double>(layout_.grid_height) * layout_.pitch};
        const std::size_t count = spec_.particle_count > 0 ? spec_.particle_count : grains_.site_count();
        positions_.resize(2 * count);
        PinnedParticles::reset_state();
    }

    const GrainMap* grain_map() const override { return &grains_; }
    std::size_t particle_count() const { return positions_.size() / 2; }
    std::size_t reflection_count() const { return reflections_; }
    double well_width() const { return sigma_; }

protected:
    // Particles start on the pinning sites, cycling through them when there
    // are more particles than sites (later laps offset by half a well so
    // coincident particles split).
    void reset_state() override {
        const std::size_t sites = grains_.site_count();
        for (std::size_t p = 0; p < particle_count(); ++p) {
            const std::size_t s = p % sites;
            const double lap_offset = static_cast<double>(p / sites) * 0.5 * sigma_;
            positions_[2 * p] = reflect(grains_.site_x[s] + lap_offset, domain_[0]);
            positions_[2 * p + 1] = reflect(grains_.site_y[s], domain_[1]);
        }
        reflections_ = 0;
    }

    void advance(double u) override {
        const double total_time = 1.0 / spec_.drive.time_scale;
        const auto steps = static_cast<std::size_t>(std::max(1.0, std::ceil(total_time / dt_max_)));
        const double dt = total_time / static_cast<double>(steps);
        const double fx = spec_.drive.input_gain * u * spec_.drive.direction[0];
        const double fy = spec_.drive.input_gain * u * spec_.drive.direction[1];
        const double inv_sigma2 = 1.0 / (sigma_ * sigma_);
        for (std::size_t step = 0; step < steps; ++step) {
            for (std::size_t p = 0; p < particle_count(); ++p) {
                const double px = positions_[2 * p], py = positions_[2 * p + 1];
                double gx = 0.0, gy = 0.0; // grad V
                for (std::size_t s = 0; s < depths_.size(); ++s) {
                    const double dx = px - grains_.site_x[s], dy = py - grains_.site_y[s];
                    const double w = depths_[s] * std::exp(-0.5 * (dx * dx + dy * dy) * inv_sigma2) * inv_sigma2;
                    gx += w * dx;
                    gy += w * dy;
                }
                positions_[2 * p] = reflect_counting(px + dt * (fx - gx), domain_[0]);
                positions_[2 * p + 1] = reflect_counting(py + dt * (fy - gy), domain_[1]);
            }
        }
    }

    void project(std::vector<double>& out) const override {
        const double half = 0.5 * layout_.pitch;
        const double inv_w2 = 1.0 / (layout_.pitch * layout_.pitch);
        for (std::size_t n = 0; n < layout_.node_count(); ++n) {
            const double cx = layout_.nodes[n].x + half, cy = layout_.nodes[n].y + half;
            double density = 0.0;
            for (std::size_t p = 0; p < particle_count(); ++p) {
                const double dx = positions_[2 * p] - cx, dy = positions_[2 * p + 1] - cy;
                density += std::exp(-0.5 * (dx * dx + dy * dy) * inv_w2);
            }
            out[n] = density;
        }
    }

    const std::vector<double>& internal_state() const override { return positions_; }

    void set_internal_state(std::vector<double> state) override {
        if (state.size() != positions_.size()) throw std::invalid_argument("PinnedParticles: state size mismatch");
        positions_ = std::move(state);
    }

private:
    static double reflect(double v, double limit) {
        while (v < 0.0 || v > limit) v = v < 0.0 ? -v : 2.0 * limit - v;
        return v;
    }

    double reflect_counting(double v, double limit) {
        if (v >= 0.0 && v <= limit) return v;
        ++reflections_;
        return reflect(v, limit);
    }

    GrainMap grains_;
    std::vector<double> depths_;
    std::vector<double> positions_; // x0, y0, x1, y1, ...
    std::array<double, 2> domain_{};
    double sigma_ = 1.0;
    double dt_max_ = 0.1;
    std::size_t reflections_ = 0;
};

} // namespace rcmap
