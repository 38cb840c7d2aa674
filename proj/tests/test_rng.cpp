#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "rcmap/rng.hpp"

using rcmap::Rng;

TEST_CASE("rng is deterministic per seed") {
    Rng a(42), b(42), c(43);
    bool all_equal = true, any_diff = false;
    for (int i = 0; i < 256; ++i) {
        const auto va = a.next_u64(), vb = b.next_u64(), vc = c.next_u64();
        all_equal = all_equal && va == vb;
        any_diff = any_diff || va != vc;
    }
    CHECK(all_equal);
    CHECK(any_diff);
}

TEST_CASE("uniform stays inside its half-open interval") {
    Rng rng(7);
    double lo = 1.0, hi = 0.0, sum = 0.0;
    constexpr int n = 20000;
    for (int i = 0; i < n; ++i) {
        const double v = rng.uniform(-2.0, 3.0);
        REQUIRE(v >= -2.0);
        REQUIRE(v < 3.0);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
        sum += v;
    }
    // mean of U(-2, 3) is 0.5; tolerance ~ 5 sigma of the sample mean
    CHECK(std::fabs(sum / n - 0.5) < 5.0 * std::sqrt(25.0 / 12.0 / n));
    CHECK(lo < -1.9);
    CHECK(hi > 2.9);
}

TEST_CASE("normal has the right first two moments") {
    Rng rng(123);
    constexpr int n = 50000;
    double sum = 0.0, sum2 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double v = rng.normal();
        sum += v;
        sum2 += v * v;
    }
    const double m = sum / n;
    const double var = sum2 / n - m * m;
    CHECK(std::fabs(m) < 5.0 / std::sqrt(static_cast<double>(n)));
    CHECK(std::fabs(var - 1.0) < 0.05);
}

TEST_CASE("derived seeds give decorrelated streams") {
    const std::uint64_t base = 99;
    const auto s1 = rcmap::derive_seed(base, 1);
    const auto s2 = rcmap::derive_seed(base, 2);
    CHECK(s1 != s2);
    CHECK(s1 != base);
    CHECK(rcmap::derive_seed(base, 1) == s1); // pure function

    Rng a(s1), b(s2);
    int agree = 0;
    for (int i = 0; i < 64; ++i)
        if ((a.next_u64() & 1) == (b.next_u64() & 1)) ++agree;
    CHECK(agree > 16);
    CHECK(agree < 48);
}
