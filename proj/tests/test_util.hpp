#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "bugb/dense_oracle.hpp"
#include "bugb/inference.hpp"

namespace testutil {

struct RandomInstance {
    bugb::Grid grid;
    bugb::ChainHyperparams hyper;
    std::vector<bugb::Observation> obs;
};

/// Random chain instance: jittered grid, log-uniform noises, random PSD
/// prior, mixed value/gradient observations (some exact).
inline RandomInstance make_random_instance(std::mt19937_64& eng, std::size_t max_nodes = 10,
                                           std::size_t max_obs = 8) {
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    auto log_uniform = [&](double lo, double hi) {
        return std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * u01(eng));
    };

    RandomInstance inst;
    const std::size_t n = 2 + static_cast<std::size_t>(eng() % (max_nodes - 1));
    const double lo = -1.0 + 2.0 * u01(eng);
    const double hi = lo + 0.2 + 2.0 * u01(eng);
    inst.grid = bugb::build_uniform_grid(lo, hi, n);
    const double dx = inst.grid.spacing(1);
    for (std::size_t i = 1; i + 1 < n; ++i)
        inst.grid.points[i] += (u01(eng) - 0.5) * 0.6 * dx;

    inst.hyper.sigma_f_sq = log_uniform(1e-3, 5.0);
    inst.hyper.sigma_g_sq = log_uniform(1e-2, 50.0);
    inst.hyper.prior_mean_f = -2.0 + 4.0 * u01(eng);
    inst.hyper.prior_mean_g = -2.0 + 4.0 * u01(eng);
    const double pf = log_uniform(0.1, 30.0);
    const double pg = log_uniform(0.1, 30.0);
    const double rho = -0.9 + 1.8 * u01(eng);
    inst.hyper.prior_cov = {pf, rho * std::sqrt(pf * pg), pg};
    inst.hyper.obs_value_var = log_uniform(1e-4, 4.0);
    inst.hyper.obs_grad_var = log_uniform(1e-4, 4.0);

    const std::size_t n_obs = static_cast<std::size_t>(eng() % (max_obs + 1));
    for (std::size_t k = 0; k < n_obs; ++k) {
        bugb::Observation o;
        o.node = static_cast<std::size_t>(eng() % n);
        o.kind = (eng() & 1) ? bugb::ObsKind::gradient : bugb::ObsKind::value;
        o.measurement = -3.0 + 6.0 * u01(eng);
        o.noise_var = (u01(eng) < 0.2) ? 0.0 : log_uniform(1e-4, 4.0);
        inst.obs.push_back(o);
    }
    return inst;
}

inline double rel_dev(double got, double want) {
    return std::abs(got - want) / std::max(1.0, std::abs(want));
}

/// Worst relative deviation between smoothed marginals (means and
/// covariance entries) and the dense oracle.
inline double smoothed_vs_oracle(const RandomInstance& inst) {
    const bugb::PosteriorBelief belief = bugb::smooth(inst.grid, inst.hyper, inst.obs);
    const bugb::DenseJoint dense =
        bugb::dense_posterior_oracle(inst.grid, inst.hyper, inst.obs);
    double worst = 0.0;
    for (std::size_t i = 0; i < inst.grid.resolution(); ++i) {
        const bugb::NodeGaussian& s = belief.smoothed[i];
        worst = std::max(worst, rel_dev(s.mf, dense.mean_f(i)));
        worst = std::max(worst, rel_dev(s.mg, dense.mean_g(i)));
        worst = std::max(worst, rel_dev(s.cov.ff, dense.var_f(i)));
        worst = std::max(worst, rel_dev(s.cov.gg, dense.var_g(i)));
        worst = std::max(worst, rel_dev(s.cov.fg, dense.cov(bugb::DenseJoint::f_index(i),
                                                            bugb::DenseJoint::g_index(i))));
    }
    return worst;
}

}  // namespace testutil
