#pragma once

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "rcmap/layout.hpp"

namespace rcmap {

// Per-node membership lists: members[n] holds the ids of every node within
// threshold_distance of node n (node n included), sorted ascending.
struct NeighborhoodIndex {
    std::vector<std::vector<std::size_t>> members;
    double threshold_distance = 0.0;

    std::size_t node_count() const { return members.size(); }

    std::size_t max_size() const {
        std::size_t m = 0;
        for (const auto& ids : members) m = std::max(m, ids.size());
        return m;
    }
};

// Pairwise scan under the layout's own distance metric. A node is always in
// its own neighborhood, so every list is non-empty.
inline NeighborhoodIndex build_neighborhoods(const SpatialLayout& layout, double threshold_distance) {
    if (!(threshold_distance >= 0.0))
        throw std::invalid_argument("build_neighborhoods: threshold_distance must be >= 0");
    layout.validate();
    const std::size_t n = layout.node_count();
    NeighborhoodIndex index;
    index.threshold_distance = threshold_distance;
    index.members.resize(n);
    for (std::size_t a = 0; a < n; ++a) {
        auto& ids = index.members[a];
        ids.push_back(a);
        for (std::size_t b = 0; b < n; ++b) {
            if (b == a) continue;
            if (layout.distance(a, b) <= threshold_distance) ids.push_back(b);
        }
        std::sort(ids.begin(), ids.end());
    }
    return index;
}

} // namespace rcmap
