#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <string>
#include <vector>

#include "rcmap/metrics.hpp"
#include "rcmap/models.hpp"
#include "rcmap/parallel.hpp"

using rcmap::build_neighborhoods;
using rcmap::delay_embed;
using rcmap::Matrix;
using rcmap::memory_capacity_map;
using rcmap::nonlinearity_map;
using rcmap::ReadoutMatrix;
using rcmap::SpatialLayout;
using rcmap::TimeSeries;

namespace {

// Hand-built readout: one column per callable of (u, t).
template <typename... Fn>
ReadoutMatrix synthetic_readout(const TimeSeries& u, Fn&&... fn) {
    constexpr std::size_t n = sizeof...(Fn);
    ReadoutMatrix readout;
    readout.layout = SpatialLayout::grid(static_cast<int>(n), 1);
    readout.data = Matrix(u.size(), n);
    std::size_t node = 0;
    (
        [&] {
            for (std::size_t t = 0; t < u.size(); ++t) readout.data(t, node) = fn(u, t);
            ++node;
        }(),
        ...);
    return readout;
}

double lag(const TimeSeries& u, std::size_t t, std::size_t tau) {
    return t >= tau ? u.values[t - tau] : 0.0;
}

} // namespace

TEST_CASE("delay embedding lays out lags right to left") {
    const TimeSeries u({1.0, 2.0, 3.0, 4.0});
    const Matrix m = delay_embed(u, 1);
    REQUIRE(m.rows() == 3);
    REQUIRE(m.cols() == 2);
    // row t = [u(t), u(t-1)] starting at t = 1
    CHECK(m(0, 0) == 2.0);
    CHECK(m(0, 1) == 1.0);
    CHECK(m(2, 0) == 4.0);
    CHECK(m(2, 1) == 3.0);

    const Matrix ident = delay_embed(u, 0);
    REQUIRE(ident.rows() == 4);
    REQUIRE(ident.cols() == 1);
    CHECK(ident(3, 0) == 4.0);

    const TimeSeries longer = rcmap::random_signal(1500, -1.0, 1.0, 1);
    const Matrix big = delay_embed(longer, 20);
    CHECK(big.rows() == 1480);
    CHECK(big.cols() == 21);

    CHECK_THROWS_AS(delay_embed(u, 4), std::invalid_argument);
}

TEST_CASE("nonlinearity separates squared from lag-linear traces") {
    const TimeSeries u = rcmap::random_signal(1000, -1.0, 1.0, 71);
    const auto readout = synthetic_readout(
        u, [](const TimeSeries& s, std::size_t t) { return s.values[t] * s.values[t]; },
        [](const TimeSeries& s, std::size_t t) { return 0.3 * lag(s, t, 2) + 0.1 * lag(s, t, 5); });
    const auto map = nonlinearity_map(u, readout, 10);
    CHECK(map.values[0] > 0.95); // u^2 has no linear explanation
    CHECK(map.values[1] < 0.01); // a lag polynomial is exactly linear
    CHECK(map.params.at("k") == "10");
}

TEST_CASE("constant traces score zero nonlinearity and get flagged") {
    const TimeSeries u = rcmap::random_signal(300, -1.0, 1.0, 5);
    const auto readout = synthetic_readout(
        u, [](const TimeSeries&, std::size_t) { return 5.0; },
        [](const TimeSeries& s, std::size_t t) { return s.values[t]; });
    const auto map = nonlinearity_map(u, readout, 3);
    CHECK(map.values[0] == 0.0);
    CHECK(map.values[1] < 1e-8);
    REQUIRE(map.diagnostics.size() == 1);
    CHECK(map.diagnostics[0].find("node 0") != std::string::npos);
    CHECK(map.diagnostics[0].find("constant trace") != std::string::npos);
}

TEST_CASE("nonlinearity stays in bounds on saturating dynamics") {
    rcmap::ReservoirSpec spec;
    spec.model = rcmap::ReservoirModel::tanh_lattice;
    spec.grid_width = 6;
    spec.grid_height = 6;
    spec.gain = 2.5;
    spec.seed = 12;
    const auto reservoir = rcmap::make_reservoir(spec);
    reservoir->initialize();
    const TimeSeries u = rcmap::random_signal(500, -1.0, 1.0, 13);
    const auto readout = reservoir->drive(u);
    const auto map = nonlinearity_map(u, readout, 8, 100);
    for (double v : map.values) {
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
    }
}

TEST_CASE("memory capacity counts exactly the recallable delays") {
    const TimeSeries u = rcmap::random_signal(1200, -1.0, 1.0, 99);
    const auto readout = synthetic_readout(
        u, [](const TimeSeries& s, std::size_t t) { return lag(s, t, 1); },
        [](const TimeSeries& s, std::size_t t) { return lag(s, t, 2); },
        [](const TimeSeries& s, std::size_t t) { return lag(s, t, 3); });

    SECTION("global neighborhood sees all three lags") {
        const auto hood = build_neighborhoods(readout.layout, 10.0);
        const auto map = memory_capacity_map(u, readout, hood, 5, 10);
        for (double v : map.values) CHECK(v == Catch::Approx(3.0).margin(0.1));
    }

    SECTION("singleton neighborhoods recall one lag each") {
        const auto hood = build_neighborhoods(readout.layout, 0.0);
        const auto map = memory_capacity_map(u, readout, hood, 5, 10);
        for (double v : map.values) CHECK(v == Catch::Approx(1.0).margin(0.1));
    }

    SECTION("recall still strong at tau = k raises the truncation diagnostic") {
        const auto hood = build_neighborhoods(readout.layout, 10.0);
        const auto map = memory_capacity_map(u, readout, hood, 2, 10);
        REQUIRE_FALSE(map.diagnostics.empty());
        CHECK(map.diagnostics[0].find("memory may extend beyond k") != std::string::npos);
    }
}

TEST_CASE("memory capacity rejects bad setups with actionable messages") {
    const TimeSeries u = rcmap::random_signal(100, -1.0, 1.0, 2);
    const auto readout = synthetic_readout(
        u, [](const TimeSeries& s, std::size_t t) { return lag(s, t, 1); },
        [](const TimeSeries& s, std::size_t t) { return lag(s, t, 2); });
    const auto hood = build_neighborhoods(readout.layout, 10.0);

    CHECK_THROWS_WITH(memory_capacity_map(u, readout, hood, 0),
                      Catch::Matchers::ContainsSubstring("k >= 1"));

    const TimeSeries tiny = rcmap::random_signal(9, -1.0, 1.0, 2);
    const auto tiny_readout = synthetic_readout(
        tiny, [](const TimeSeries& s, std::size_t t) { return lag(s, t, 1); },
        [](const TimeSeries& s, std::size_t t) { return lag(s, t, 2); },
        [](const TimeSeries& s, std::size_t t) { return lag(s, t, 3); },
        [](const TimeSeries& s, std::size_t t) { return lag(s, t, 4); },
        [](const TimeSeries& s, std::size_t t) { return lag(s, t, 5); });
    const auto tiny_hood = build_neighborhoods(tiny_readout.layout, 10.0);
    CHECK_THROWS_WITH(memory_capacity_map(tiny, tiny_readout, tiny_hood, 1),
                      Catch::Matchers::ContainsSubstring("raise T or lower threshold_distance"));

    CHECK_THROWS_WITH(nonlinearity_map(u, readout, 3, 100),
                      Catch::Matchers::ContainsSubstring("leave no usable rows"));
}

TEST_CASE("metric maps are identical under any thread count") {
    rcmap::ReservoirSpec spec;
    spec.model = rcmap::ReservoirModel::tanh_lattice;
    spec.grid_width = 8;
    spec.grid_height = 8;
    spec.gain_gradient = {0.3, 2.0};
    spec.seed = 31;
    const auto reservoir = rcmap::make_reservoir(spec);
    reservoir->initialize();
    const TimeSeries u = rcmap::random_signal(400, -1.0, 1.0, 32);
    const auto readout = reservoir->drive(u);
    const auto hood = build_neighborhoods(readout.layout, 1.5);

    rcmap::set_thread_count(1);
    const auto nl_seq = nonlinearity_map(u, readout, 6, 50);
    const auto mc_seq = memory_capacity_map(u, readout, hood, 6, 50);
    rcmap::set_thread_count(4);
    const auto nl_par = nonlinearity_map(u, readout, 6, 50);
    const auto mc_par = memory_capacity_map(u, readout, hood, 6, 50);
    rcmap::set_thread_count(0);

    CHECK(nl_seq.values == nl_par.values);
    CHECK(mc_seq.values == mc_par.values);
}

TEST_CASE("stability map is the absolute snapshot difference") {
    const auto layout = SpatialLayout::grid(2, 2);
    const std::vector<double> before = {1.0, -2.0, 0.5, 3.0};
    const std::vector<double> after = {1.0, -2.5, 1.5, 3.0};
    const auto map = rcmap::stability_map(before, after, layout);
    CHECK(map.values == std::vector<double>{0.0, 0.5, 1.0, 0.0});
    CHECK_THROWS_AS(rcmap::stability_map(before, {1.0}, layout), std::invalid_argument);
}

TEST_CASE("analyze runs the full protocol and stamps parameters") {
    rcmap::ReservoirSpec spec;
    spec.model = rcmap::ReservoirModel::lti_filter_bank;
    spec.grid_width = 6;
    spec.grid_height = 6;
    spec.seed = 21;
    const auto reservoir = rcmap::make_reservoir(spec);
    const TimeSeries u = rcmap::random_signal(600, -1.0, 1.0, 22);
    const auto result = rcmap::analyze(u, *reservoir, 8, 2.0, 100);

    CHECK(result.initial_relax.converged);
    CHECK(result.final_relax.converged);
    REQUIRE(result.nonlinearity.values.size() == 36);
    REQUIRE(result.memory_capacity.values.size() == 36);
    REQUIRE(result.stability.values.size() == 36);
    for (double v : result.nonlinearity.values) {
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
    }
    for (double v : result.memory_capacity.values) {
        CHECK(v >= 0.0);
        CHECK(v <= 8.0);
    }
    CHECK(result.memory_capacity.params.at("threshold_distance") == "2");
    CHECK(result.nonlinearity.params.at("washout") == "100");
}
