#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <limits>

#include "bugb/model.hpp"

using namespace bugb;

TEST_CASE("default hyperparameters validate") {
    ChainHyperparams h;
    CHECK_NOTHROW(h.validate());
    CHECK(h.prior_mean_f == 0.0);
    CHECK(h.prior_mean_g == 0.0);
    CHECK(h.prior_cov.ff == ChainHyperparams::kDefaultPriorVar);
    CHECK(h.prior_cov.gg == ChainHyperparams::kDefaultPriorVar);
    CHECK(h.prior_cov.fg == 0.0);
}

TEST_CASE("process variances must be strictly positive and finite") {
    ChainHyperparams h;
    h.sigma_f_sq = 0.0;
    CHECK_THROWS_AS(h.validate(), std::invalid_argument);
    h.sigma_f_sq = -1.0;
    CHECK_THROWS_AS(h.validate(), std::invalid_argument);
    h.sigma_f_sq = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(h.validate(), std::invalid_argument);
    h = ChainHyperparams{};
    h.sigma_g_sq = 0.0;
    CHECK_THROWS_AS(h.validate(), std::invalid_argument);
    h = ChainHyperparams{};
    h.sigma_f_sq = 1e-300;  // tiny but positive is allowed
    CHECK_NOTHROW(h.validate());
}

TEST_CASE("observation variances must be non-negative") {
    ChainHyperparams h;
    h.obs_value_var = -0.1;
    CHECK_THROWS_AS(h.validate(), std::invalid_argument);
    h = ChainHyperparams{};
    h.obs_grad_var = -1e-9;
    CHECK_THROWS_AS(h.validate(), std::invalid_argument);
    h = ChainHyperparams{};
    h.obs_value_var = 0.0;
    h.obs_grad_var = 0.0;
    CHECK_NOTHROW(h.validate());
}

TEST_CASE("prior covariance must be PSD") {
    ChainHyperparams h;
    h.prior_cov = {1.0, 2.0, 1.0};  // |fg| > sqrt(ff*gg)
    CHECK_THROWS_AS(h.validate(), std::invalid_argument);
    h.prior_cov = {-1.0, 0.0, 1.0};
    CHECK_THROWS_AS(h.validate(), std::invalid_argument);
    h.prior_cov = {4.0, 2.0, 1.0};  // boundary: fg^2 == ff*gg
    CHECK_NOTHROW(h.validate());
    h.prior_cov = {0.0, 0.0, 0.0};
    CHECK_NOTHROW(h.validate());
}

TEST_CASE("transition model caches spacings and process noises") {
    Grid g;
    g.points = {0.0, 0.25, 0.75, 1.0};
    ChainHyperparams h;
    h.sigma_f_sq = 0.5;
    h.sigma_g_sq = 2.0;
    const TransitionModel tm(g, h);
    REQUIRE(tm.dx.size() == 3);
    CHECK(tm.dx[0] == 0.25);
    CHECK(tm.dx[1] == 0.5);
    CHECK(tm.dx[2] == 0.25);
    CHECK(tm.q_f == 0.5);
    CHECK(tm.q_g == 2.0);
    // A_i = [[1, dx], [0, 1]] has unit determinant for any dx
    for (double dx : tm.dx) CHECK(1.0 * 1.0 - dx * 0.0 == 1.0);
}

TEST_CASE("transition model rejects invalid hyperparameters") {
    const Grid g = build_uniform_grid(0.0, 1.0, 5);
    ChainHyperparams h;
    h.sigma_g_sq = 0.0;
    CHECK_THROWS_AS(TransitionModel(g, h), std::invalid_argument);
}
