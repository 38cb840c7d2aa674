#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <set>

#include "rcmap/grains.hpp"

using rcmap::GrainParams;
using rcmap::SpatialLayout;
using rcmap::voronoi_grains;

TEST_CASE("site count tracks footprint area over grain area") {
    const auto layout = SpatialLayout::grid(1024, 1024);
    GrainParams params;
    params.mean_size = 40.0;
    const auto map = voronoi_grains(layout, params, 1);
    // 1024*1024 / 40^2 = 655.36 -> tolerate 20%
    CHECK(map.site_count() > 524);
    CHECK(map.site_count() < 787);
}

TEST_CASE("zero variance fraction gives uniform multipliers") {
    const auto layout = SpatialLayout::grid(32, 32);
    GrainParams params;
    params.mean_size = 4.0;
    params.variance_fraction = 0.0;
    const auto map = voronoi_grains(layout, params, 7);
    for (double m : map.site_multiplier) CHECK(m == 1.0);
    for (double m : map.node_multiplier) CHECK(m == 1.0);
}

TEST_CASE("multipliers stay clipped and roughly match the requested spread") {
    const auto layout = SpatialLayout::grid(256, 256);
    GrainParams params;
    params.mean_size = 4.0;
    params.variance_fraction = 0.2;
    const auto map = voronoi_grains(layout, params, 3);
    REQUIRE(map.site_count() > 1000);
    double sum = 0.0, sum2 = 0.0;
    for (double m : map.site_multiplier) {
        REQUIRE(m >= 0.1);
        REQUIRE(m <= 1.9);
        sum += m;
        sum2 += m * m;
    }
    const double n = static_cast<double>(map.site_count());
    const double mean = sum / n;
    const double sd = std::sqrt(sum2 / n - mean * mean);
    CHECK(mean == Catch::Approx(1.0).margin(0.02));
    CHECK(sd == Catch::Approx(0.2).margin(0.06));
}

TEST_CASE("every node is assigned its nearest site's multiplier") {
    const auto layout = SpatialLayout::grid(16, 16);
    GrainParams params;
    params.mean_size = 5.0;
    const auto map = voronoi_grains(layout, params, 11);
    REQUIRE(map.node_grain.size() == 256);
    for (std::size_t i = 0; i < 256; ++i) {
        const auto& node = layout.nodes[i];
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t s = 0; s < map.site_count(); ++s) {
            const double dx = node.x - map.site_x[s], dy = node.y - map.site_y[s];
            best = std::min(best, dx * dx + dy * dy);
        }
        const std::size_t g = map.node_grain[i];
        const double dx = node.x - map.site_x[g], dy = node.y - map.site_y[g];
        CHECK(dx * dx + dy * dy == Catch::Approx(best).margin(1e-12));
        CHECK(map.node_multiplier[i] == map.site_multiplier[g]);
    }
    // grains form contiguous patches, so several nodes share each site
    std::set<std::size_t> used(map.node_grain.begin(), map.node_grain.end());
    CHECK(used.size() > 1);
}

TEST_CASE("grains are deterministic per seed") {
    const auto layout = SpatialLayout::grid(64, 64);
    GrainParams params;
    const auto a = voronoi_grains(layout, params, 42);
    const auto b = voronoi_grains(layout, params, 42);
    const auto c = voronoi_grains(layout, params, 43);
    CHECK(a.site_x == b.site_x);
    CHECK(a.site_multiplier == b.site_multiplier);
    CHECK(a.node_grain == b.node_grain);
    CHECK(a.site_x != c.site_x);
}

TEST_CASE("out-of-contract parameters are rejected") {
    const auto layout = SpatialLayout::grid(8, 8);
    GrainParams params;
    params.mean_size = 8.0; // not smaller than the short side
    CHECK_THROWS_AS(voronoi_grains(layout, params, 1), std::invalid_argument);
    params.mean_size = -1.0;
    CHECK_THROWS_AS(params.validate(), std::invalid_argument);
    params.mean_size = 4.0;
    params.variance_fraction = 1.0;
    CHECK_THROWS_AS(params.validate(), std::invalid_argument);
    params.variance_fraction = -0.1;
    CHECK_THROWS_AS(params.validate(), std::invalid_argument);
}
