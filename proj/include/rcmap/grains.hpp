#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include "rcmap/layout.hpp"
#include "rcmap/rng.hpp"

namespace rcmap {

// Static spatial disorder: Voronoi cells around randomly scattered sites,
// each cell carrying one strength multiplier.
struct GrainParams {
    double mean_size = 4.0;         // target grain diameter, position units
    double variance_fraction = 0.2; // std of the per-grain multiplier around 1

    void validate() const {
        if (!(mean_size > 0.0) || !std::isfinite(mean_size))
            throw std::invalid_argument("GrainParams: mean_size must be finite and > 0");
        if (!(variance_fraction >= 0.0) || !(variance_fraction < 1.0))
            throw std::invalid_argument("GrainParams: variance_fraction must lie in [0, 1)");
    }
};

struct GrainMap {
    std::vector<double> site_x, site_y, site_multiplier;
    std::vector<std::size_t> node_grain;   // per node: owning site index
    std::vector<double> node_multiplier;   // per node: owning site's multiplier

    std::size_t site_count() const { return site_multiplier.size(); }
};

// Scatter sites uniformly over the grid's footprint (one per mean_size^2 of
// area), draw each site's multiplier from 1 + variance_fraction * N(0,1)
// clipped to [0.1, 1.9], then hand every node the multiplier of its nearest
// site (ties resolve to the lowest site index).
inline GrainMap voronoi_grains(const SpatialLayout& layout, const GrainParams& params, std::uint64_t seed) {
    params.validate();
    layout.validate();
    if (!layout.is_grid()) throw std::invalid_argument("voronoi_grains: grain disorder needs a grid layout");

    const double width = static_cast<double>(layout.grid_width) * layout.pitch;
    const double height = static_cast<double>(layout.grid_height) * layout.pitch;
    if (!(params.mean_size < std::min(width, height)))
        throw std::invalid_argument("voronoi_grains: mean_size must be smaller than the grid's shorter side");
    const auto sites = static_cast<std::size_t>(
        std::max<long long>(1, std::llround(width * height / (params.mean_size * params.mean_size))));

    GrainMap map;
    map.site_x.resize(sites);
    map.site_y.resize(sites);
    map.site_multiplier.resize(sites);
    Rng rng(seed);
    for (std::size_t s = 0; s < sites; ++s) {
        map.site_x[s] = rng.uniform(0.0, width);
        map.site_y[s] = rng.uniform(0.0, height);
    }
    for (std::size_t s = 0; s < sites; ++s)
        map.site_multiplier[s] = std::clamp(1.0 + params.variance_fraction * rng.normal(), 0.1, 1.9);

    const std::size_t n = layout.node_count();
    map.node_grain.resize(n);
    map.node_multiplier.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const SpatialLayout::Node& node = layout.nodes[i];
        std::size_t best = 0;
        double best_d2 = std::numeric_limits<double>::infinity();
        for (std::size_t s = 0; s < sites; ++s) {
            const double dx = node.x - map.site_x[s], dy = node.y - map.site_y[s];
            const double d2 = dx * dx + dy * dy;
            if (d2 < best_d2) {
                best_d2 = d2;
                best = s;
            }
        }
        map.node_grain[i] = best;
        map.node_multiplier[i] = map.site_multiplier[best];
    }
    return map;
}

} // namespace rcmap
