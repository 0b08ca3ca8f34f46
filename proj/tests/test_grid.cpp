#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <limits>
#include <random>

#include "bugb/grid.hpp"

using namespace bugb;

TEST_CASE("build_uniform_grid endpoints only") {
    const Grid g = build_uniform_grid(0.0, 1.0, 2);
    REQUIRE(g.resolution() == 2);
    CHECK(g.points[0] == 0.0);
    CHECK(g.points[1] == 1.0);
}

TEST_CASE("build_uniform_grid spacing 0.01 over 101 points") {
    const Grid g = build_uniform_grid(0.0, 1.0, 101);
    REQUIRE(g.resolution() == 101);
    CHECK(g.points.front() == 0.0);
    CHECK(g.points.back() == 1.0);
    const double tol = 4.0 * std::numeric_limits<double>::epsilon();
    for (std::size_t i = 1; i < g.resolution(); ++i)
        CHECK(std::abs(g.spacing(i) - 0.01) <= tol);
}

TEST_CASE("build_uniform_grid symmetric integer grid") {
    const Grid g = build_uniform_grid(-2.0, 2.0, 5);
    const double want[] = {-2.0, -1.0, 0.0, 1.0, 2.0};
    REQUIRE(g.resolution() == 5);
    for (std::size_t i = 0; i < 5; ++i) CHECK(g.points[i] == want[i]);
}

TEST_CASE("build_uniform_grid rejects bad configs") {
    CHECK_THROWS_AS(build_uniform_grid(1.0, 1.0, 10), std::invalid_argument);
    CHECK_THROWS_AS(build_uniform_grid(2.0, 1.0, 10), std::invalid_argument);
    CHECK_THROWS_AS(build_uniform_grid(0.0, 1.0, 1), std::invalid_argument);
    CHECK_THROWS_AS(build_uniform_grid(0.0, 1.0, 0), std::invalid_argument);
}

TEST_CASE("build_uniform_grid spacing constant within rounding") {
    std::mt19937_64 eng(7);
    std::uniform_real_distribution<double> lo_d(-10.0, 5.0), span_d(0.1, 20.0);
    for (int it = 0; it < 50; ++it) {
        const double lo = lo_d(eng);
        const double hi = lo + span_d(eng);
        const std::size_t res = 2 + static_cast<std::size_t>(eng() % 400);
        const Grid g = build_uniform_grid(lo, hi, res);
        const double nominal = (hi - lo) / static_cast<double>(res - 1);
        const double tol = 4.0 * std::numeric_limits<double>::epsilon() *
                           (std::abs(lo) + std::abs(hi) + (hi - lo));
        for (std::size_t i = 1; i < res; ++i) {
            REQUIRE(g.spacing(i) > 0.0);
            REQUIRE(std::abs(g.spacing(i) - nominal) <= tol);
        }
    }
}

TEST_CASE("snap_to_grid nearest, midpoint, clamp") {
    Grid g;
    g.points = {0.0, 0.5, 1.0};
    CHECK(snap_to_grid(g, 0.49) == 1);
    CHECK(snap_to_grid(g, 0.25) == 0);  // exact midpoint -> lower index
    CHECK(snap_to_grid(g, 0.75) == 1);
    CHECK(snap_to_grid(g, 7.0) == 2);
    CHECK(snap_to_grid(g, -7.0) == 0);
    CHECK(snap_to_grid(g, 0.5) == 1);
    CHECK_THROWS_AS(snap_to_grid(g, std::numeric_limits<double>::quiet_NaN()), std::domain_error);
    CHECK_THROWS_AS(snap_to_grid(g, std::numeric_limits<double>::infinity()), std::domain_error);
}

TEST_CASE("snap_to_grid is idempotent") {
    const Grid g = build_uniform_grid(-1.0, 3.0, 37);
    for (std::size_t i = 0; i < g.resolution(); ++i)
        CHECK(snap_to_grid(g, g.points[i]) == i);
    std::mt19937_64 eng(11);
    std::uniform_real_distribution<double> xd(-2.0, 4.0);
    for (int it = 0; it < 500; ++it) {
        const std::size_t idx = snap_to_grid(g, xd(eng));
        CHECK(snap_to_grid(g, g.points[idx]) == idx);
    }
}

TEST_CASE("linear_recursion_value arithmetic") {
    CHECK(linear_recursion_value(1.0, 0.0, 0.1) == 1.0);
    CHECK(linear_recursion_value(0.0, 2.0, 0.5) == 1.0);
    CHECK(linear_recursion_value(1.0, -1.0, 1.0) == 0.0);
}

TEST_CASE("grid refinement: one-step reconstruction error is quadratic in spacing") {
    auto f = [](double x) { return x * x; };
    auto fp = [](double x) { return 2.0 * x; };
    auto max_err = [&](std::size_t res) {
        const Grid g = build_uniform_grid(0.0, 1.0, res);
        double worst = 0.0;
        for (std::size_t i = 1; i < res; ++i) {
            const double pred = linear_recursion_value(f(g.points[i - 1]), fp(g.points[i - 1]),
                                                       g.spacing(i));
            worst = std::max(worst, std::abs(f(g.points[i]) - pred));
        }
        return worst;
    };
    double prev = max_err(11);
    for (std::size_t res : {21, 41, 81}) {
        const double cur = max_err(res);
        CHECK(prev / cur >= 3.9);  // doubling resolution quarters the error
        prev = cur;
    }
}
