#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "rcmap/leastsq.hpp"
#include "rcmap/rng.hpp"

using rcmap::LeastSquaresSolver;
using rcmap::Matrix;

namespace {

Matrix random_matrix(std::size_t m, std::size_t n, std::uint64_t seed) {
    rcmap::Rng rng(seed);
    Matrix a(m, n);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) a(i, j) = rng.uniform(-1.0, 1.0);
    return a;
}

} // namespace

TEST_CASE("consistent overdetermined system is solved exactly") {
    Matrix a(3, 2);
    a(0, 0) = 1.0; a(0, 1) = 0.0;
    a(1, 0) = 0.0; a(1, 1) = 2.0;
    a(2, 0) = 1.0; a(2, 1) = 1.0;
    const std::vector<double> x_true = {3.0, -2.0};
    const std::vector<double> y = {3.0, -4.0, 1.0};
    const LeastSquaresSolver solver(a);
    CHECK(solver.rank() == 2);
    const auto x = solver.solve(y);
    CHECK(x[0] == Catch::Approx(x_true[0]).margin(1e-12));
    CHECK(x[1] == Catch::Approx(x_true[1]).margin(1e-12));
}

TEST_CASE("simple regression line matches the closed form") {
    // y on [1, t]: slope = cov(t,y)/var(t) = 1.4, intercept = 3.5
    Matrix a(4, 2);
    const double ts[] = {1.0, 2.0, 3.0, 4.0};
    const std::vector<double> y = {6.0, 5.0, 7.0, 10.0};
    for (std::size_t i = 0; i < 4; ++i) {
        a(i, 0) = 1.0;
        a(i, 1) = ts[i];
    }
    const auto x = LeastSquaresSolver(a).solve(y);
    CHECK(x[0] == Catch::Approx(3.5).margin(1e-12));
    CHECK(x[1] == Catch::Approx(1.4).margin(1e-12));
}

TEST_CASE("collinear columns get the minimum-norm solution") {
    // columns are u and 2u, target 4u: any a + 2b = 4 fits; min norm picks
    // the projection (a, b) = (0.8, 1.6)
    rcmap::Rng rng(5);
    Matrix a(12, 2);
    std::vector<double> y(12);
    for (std::size_t i = 0; i < 12; ++i) {
        const double u = rng.uniform(-1.0, 1.0);
        a(i, 0) = u;
        a(i, 1) = 2.0 * u;
        y[i] = 4.0 * u;
    }
    const LeastSquaresSolver solver(a);
    CHECK(solver.rank() == 1);
    const auto x = solver.solve(y);
    CHECK(x[0] == Catch::Approx(0.8).margin(1e-10));
    CHECK(x[1] == Catch::Approx(1.6).margin(1e-10));
}

TEST_CASE("residual is orthogonal to the column space") {
    const Matrix a = random_matrix(24, 6, 17);
    rcmap::Rng rng(18);
    std::vector<double> y(24);
    for (double& v : y) v = rng.uniform(-2.0, 2.0);
    const auto x = LeastSquaresSolver(a).solve(y);
    std::vector<double> residual(24);
    for (std::size_t i = 0; i < 24; ++i) {
        double s = y[i];
        for (std::size_t j = 0; j < 6; ++j) s -= a(i, j) * x[j];
        residual[i] = s;
    }
    for (std::size_t j = 0; j < 6; ++j) {
        double dot = 0.0;
        for (std::size_t i = 0; i < 24; ++i) dot += a(i, j) * residual[i];
        CHECK(std::fabs(dot) < 1e-10);
    }
}

TEST_CASE("one factorization serves many right-hand sides") {
    const Matrix a = random_matrix(30, 5, 99);
    const LeastSquaresSolver shared(a);
    rcmap::Rng rng(100);
    for (int rep = 0; rep < 3; ++rep) {
        std::vector<double> y(30);
        for (double& v : y) v = rng.uniform(-1.0, 1.0);
        const auto from_shared = shared.solve(y);
        const auto from_fresh = LeastSquaresSolver(a).solve(y);
        CHECK(from_shared == from_fresh);
    }
}

TEST_CASE("rank reporting and degenerate inputs") {
    const Matrix a = random_matrix(10, 3, 4);
    CHECK(LeastSquaresSolver(a).rank() == 3);

    Matrix dup(10, 4);
    for (std::size_t i = 0; i < 10; ++i) {
        for (std::size_t j = 0; j < 3; ++j) dup(i, j) = a(i, j);
        dup(i, 3) = a(i, 1); // duplicated column
    }
    CHECK(LeastSquaresSolver(dup).rank() == 3);

    const Matrix zero(5, 2);
    const LeastSquaresSolver zsolver(zero);
    CHECK(zsolver.rank() == 0);
    const auto x = zsolver.solve(std::vector<double>{1.0, 2.0, 3.0, 4.0, 5.0});
    CHECK(x == std::vector<double>{0.0, 0.0});

    CHECK_THROWS_AS(LeastSquaresSolver(Matrix(2, 3)), std::invalid_argument);
    Matrix bad(3, 2);
    bad(0, 0) = std::nan("");
    CHECK_THROWS_AS(LeastSquaresSolver(bad), std::invalid_argument);
}
