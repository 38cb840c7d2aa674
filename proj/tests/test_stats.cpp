#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "rcmap/stats.hpp"

TEST_CASE("moments match hand-checked values") {
    const std::vector<double> a = {1.0, 2.0, 4.0, 3.0, 5.0};
    const std::vector<double> b = {2.0, 4.0, 5.0, 7.0, 11.0};
    CHECK(rcmap::mean(a) == Catch::Approx(3.0));
    CHECK(rcmap::variance(a) == Catch::Approx(2.0));
    CHECK(rcmap::covariance(a, b) == Catch::Approx(3.8));
    CHECK(rcmap::pearson(a, b) == Catch::Approx(0.87827531068994602).margin(1e-14));
}

TEST_CASE("pearson of a constant side is zero") {
    const std::vector<double> c(5, 2.0);
    const std::vector<double> v = {1.0, 2.0, 3.0, 4.0, 5.0};
    CHECK(rcmap::pearson(c, v) == 0.0);
    CHECK(rcmap::pearson(v, c) == 0.0);
}

TEST_CASE("average ranks spread ties evenly") {
    const std::vector<double> x = {10.0, 20.0, 20.0, 30.0};
    const auto ranks = rcmap::average_ranks(x);
    CHECK(ranks == std::vector<double>{1.0, 2.5, 2.5, 4.0});

    const std::vector<double> all_tied(4, 7.0);
    const auto flat = rcmap::average_ranks(all_tied);
    CHECK(flat == std::vector<double>{2.5, 2.5, 2.5, 2.5});
}

TEST_CASE("spearman is exactly +/-1 on monotone data") {
    const std::vector<double> x = {1.0, 2.0, 3.0, 4.0, 5.0};
    const std::vector<double> up = {10.0, 200.0, 3000.0, 40000.0, 500000.0};
    std::vector<double> down(up.rbegin(), up.rend());
    CHECK(rcmap::spearman(x, up) == Catch::Approx(1.0).margin(1e-14));
    CHECK(rcmap::spearman(x, down) == Catch::Approx(-1.0).margin(1e-14));
}

TEST_CASE("t-distribution tail probabilities match reference values") {
    // references computed with an independent implementation
    CHECK(rcmap::student_t_two_sided_p(2.5, 10.0) ==
          Catch::Approx(0.031446844236608776).epsilon(1e-12));
    CHECK(rcmap::student_t_two_sided_p(-2.5, 10.0) ==
          Catch::Approx(0.031446844236608776).epsilon(1e-12));
    CHECK(rcmap::student_t_two_sided_p(1.0, 3.0) ==
          Catch::Approx(0.39100221895577053).epsilon(1e-12));
    CHECK(rcmap::student_t_two_sided_p(0.0, 5.0) == Catch::Approx(1.0).epsilon(1e-12));
    CHECK(rcmap::student_t_two_sided_p(4.2, 97.0) ==
          Catch::Approx(5.9291117213873067e-05).epsilon(1e-10));
}

TEST_CASE("spearman test reproduces reference rho and p, ties included") {
    const std::vector<double> x = {1.0, 2.0, 2.0, 3.0, 5.0, 4.0, 7.0, 6.5, 8.0, 9.0};
    const std::vector<double> y = {2.0, 1.0, 4.0, 3.0, 6.0, 5.0, 8.0, 7.0, 10.0, 9.5};
    const auto strong = rcmap::spearman_test(x, y);
    CHECK(strong.coefficient == Catch::Approx(0.94833264814090068).margin(1e-12));
    CHECK(strong.p_value == Catch::Approx(2.9285883237761186e-05).epsilon(1e-9));

    const std::vector<double> x2 = {3.0, 1.0, 4.0, 1.0, 5.0, 9.0, 2.0, 6.0};
    const std::vector<double> y2 = {2.0, 7.0, 1.0, 8.0, 2.0, 8.0, 1.0, 8.0};
    const auto weak = rcmap::spearman_test(x2, y2);
    CHECK(weak.coefficient == Catch::Approx(0.19885368120992467).margin(1e-12));
    CHECK(weak.p_value == Catch::Approx(0.6368617833253285).epsilon(1e-9));
}

TEST_CASE("perfect rank agreement pins the p-value at zero") {
    const std::vector<double> x = {1.0, 2.0, 3.0, 4.0};
    const std::vector<double> y = {5.0, 6.0, 7.0, 8.0};
    const auto test = rcmap::spearman_test(x, y);
    CHECK(test.coefficient == Catch::Approx(1.0));
    CHECK(test.p_value == 0.0);
}

TEST_CASE("incomplete beta hits its boundary identities") {
    CHECK(rcmap::regularized_incomplete_beta(2.0, 3.0, 0.0) == 0.0);
    CHECK(rcmap::regularized_incomplete_beta(2.0, 3.0, 1.0) == 1.0);
    // I_x(1, 1) = x
    CHECK(rcmap::regularized_incomplete_beta(1.0, 1.0, 0.37) == Catch::Approx(0.37).margin(1e-14));
    // symmetry I_x(a,b) = 1 - I_{1-x}(b,a)
    const double lhs = rcmap::regularized_incomplete_beta(2.5, 4.5, 0.3);
    const double rhs = 1.0 - rcmap::regularized_incomplete_beta(4.5, 2.5, 0.7);
    CHECK(lhs == Catch::Approx(rhs).margin(1e-14));
}
