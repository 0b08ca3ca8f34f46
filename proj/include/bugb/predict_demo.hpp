#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bugb/environment.hpp"
#include "bugb/optimizer.hpp"

namespace bugb {

namespace detail {

/// Standard-normal quantile via Acklam's rational approximation
/// (relative error below 1.2e-9 on (0, 1)).
inline double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("normal_quantile: p must be in (0,1)");
    static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                   -2.759285104469687e+02, 1.383577518672690e+02,
                                   -3.066479806614716e+01, 2.506628277459239e+00};
    static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                   -1.556989798598866e+02, 6.680131188771972e+01,
                                   -1.328068155288572e+01};
    static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                   -2.400758277161838e+00, -2.549732539343734e+00,
                                   4.374664141464968e+00,  2.938163982698783e+00};
    static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                   2.445134137142996e+00, 3.754408661907416e+00};
    constexpr double p_low = 0.02425;
    if (p < p_low) {
        const double q = std::sqrt(-2.0 * std::log(p));
        return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    if (p > 1.0 - p_low) {
        const double q = std::sqrt(-2.0 * std::log(1.0 - p));
        return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    const double q = p - 0.5;
    const double r = q * q;
    return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
           (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

}  // namespace detail

/// Posterior-snapshot scenario: a handful of UCB-driven rounds on one
/// function, then per-node credible bands at the requested two-sided level.
struct PredictDemoConfig {
    std::string function = "f1";
    std::size_t observations = 5;
    double noise = 1.0;
    std::size_t resolution = 100;
    std::uint64_t seed = 1;
    double z = AcquisitionConfig::kDefaultZ;
    double level = 0.99;
    bool gradient_feedback = true;
    std::optional<double> grad_noise_sd;  // default: same as value noise
    double sigma_f_sq = ChainHyperparams::kDefaultSigmaFSq;
    double sigma_g_sq = ChainHyperparams::kDefaultSigmaGSq;
    double prior_var = ChainHyperparams::kDefaultPriorVar;

    void validate() const {
        if (resolution < 2) throw std::invalid_argument("predict-demo: resolution must be >= 2");
        if (noise < 0.0) throw std::invalid_argument("predict-demo: noise must be >= 0");
        if (!(level > 0.0 && level < 1.0))
            throw std::invalid_argument("predict-demo: level must be in (0,1)");
    }
};

struct PredictDemoRow {
    double x = 0.0;
    double true_f = 0.0;
    double mean = 0.0;
    double lower = 0.0;
    double upper = 0.0;
};

struct PredictDemoResult {
    std::vector<PredictDemoRow> rows;  // one per grid node
    std::vector<std::size_t> pulled;   // nodes queried, in pull order
    double coverage = 0.0;             // fraction of nodes with true f inside the band
};

inline PredictDemoResult run_predict_demo(const PredictDemoConfig& cfg) {
    cfg.validate();
    TestFunction fn = make_function(cfg.function);
    const Grid grid = build_uniform_grid(fn.lo, fn.hi, cfg.resolution);
    const double gsd = cfg.grad_noise_sd.value_or(cfg.noise);
    Environment env(std::move(fn), grid, cfg.noise, gsd, cfg.seed, 0);

    BugbConfig bc;
    bc.grid = grid;
    bc.hyper.sigma_f_sq = cfg.sigma_f_sq;
    bc.hyper.sigma_g_sq = cfg.sigma_g_sq;
    bc.hyper.prior_cov = {cfg.prior_var, 0.0, cfg.prior_var};
    bc.hyper.obs_value_var = cfg.noise * cfg.noise;
    bc.hyper.obs_grad_var = gsd * gsd;
    bc.acquisition.z = cfg.z;
    bc.gradient_feedback = cfg.gradient_feedback;
    BugbOptimizer opt(bc);

    PredictDemoResult out;
    for (std::size_t t = 0; t < cfg.observations; ++t) {
        const std::size_t node = opt.ask();
        out.pulled.push_back(node);
        const double value = env.observe_value(node);
        if (cfg.gradient_feedback)
            opt.tell(node, value, env.observe_gradient(node));
        else
            opt.tell(node, value);
    }

    const double zq = detail::normal_quantile(0.5 * (1.0 + cfg.level));
    const auto& smoothed = opt.belief().smoothed;
    std::size_t inside = 0;
    for (std::size_t i = 0; i < grid.resolution(); ++i) {
        PredictDemoRow row;
        row.x = grid.points[i];
        row.true_f = env.true_value(i);
        row.mean = smoothed[i].mf;
        const double sd = std::sqrt(std::max(smoothed[i].cov.ff, 0.0));
        row.lower = row.mean - zq * sd;
        row.upper = row.mean + zq * sd;
        if (row.true_f >= row.lower && row.true_f <= row.upper) ++inside;
        out.rows.push_back(row);
    }
    out.coverage = static_cast<double>(inside) / static_cast<double>(grid.resolution());
    return out;
}

}  // namespace bugb
