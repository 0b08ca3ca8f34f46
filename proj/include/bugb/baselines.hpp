#pragma once

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "bugb/grid.hpp"
#include "bugb/rng.hpp"

namespace bugb {

/// Streaming per-arm statistics (Welford updates).
class ArmStats {
  public:
    explicit ArmStats(std::size_t arms) : count_(arms, 0), mean_(arms, 0.0), m2_(arms, 0.0) {}

    std::size_t arms() const { return count_.size(); }
    std::uint64_t total_pulls() const { return total_; }
    std::uint64_t pulls(std::size_t arm) const { return count_[arm]; }
    double mean(std::size_t arm) const { return mean_[arm]; }

    /// Unbiased sample variance; 0 while fewer than two pulls.
    double variance(std::size_t arm) const {
        return count_[arm] < 2 ? 0.0 : m2_[arm] / static_cast<double>(count_[arm] - 1);
    }

    void record(std::size_t arm, double reward) {
        if (arm >= count_.size()) throw std::out_of_range("arm index");
        ++total_;
        ++count_[arm];
        const double delta = reward - mean_[arm];
        mean_[arm] += delta / static_cast<double>(count_[arm]);
        m2_[arm] += delta * (reward - mean_[arm]);
    }

  private:
    std::vector<std::uint64_t> count_;
    std::vector<double> mean_;
    std::vector<double> m2_;
    std::uint64_t total_ = 0;
};

/// Eq. 1 optimistic estimate for a pulled arm.
inline double ucb_tuned_score(const ArmStats& stats, std::size_t arm) {
    const double n = static_cast<double>(stats.total_pulls());
    const double ni = static_cast<double>(stats.pulls(arm));
    const double log_n = std::log(n);
    const double tuned = stats.variance(arm) + std::sqrt(2.0 * log_n / ni);
    return stats.mean(arm) + std::sqrt((log_n / ni) * std::min(0.25, tuned));
}

/// Lowest-index unpulled arm first, then the Eq. 1 argmax (ties to lowest).
inline std::size_t select_ucb_tuned(const ArmStats& stats) {
    const std::size_t arms = stats.arms();
    if (arms == 0) throw std::invalid_argument("select_ucb_tuned: no arms");
    for (std::size_t a = 0; a < arms; ++a)
        if (stats.pulls(a) == 0) return a;
    std::size_t best = 0;
    double best_score = ucb_tuned_score(stats, 0);
    for (std::size_t a = 1; a < arms; ++a) {
        const double s = ucb_tuned_score(stats, a);
        if (s > best_score) {
            best = a;
            best_score = s;
        }
    }
    return best;
}

struct GpParams {
    double signal_var = 1.0;
    double length_scale = 0.1;
    double noise_var = 1.0;

    void validate() const {
        if (!(length_scale > 0.0)) throw std::invalid_argument("gp: length scale must be > 0");
        if (!(signal_var > 0.0)) throw std::invalid_argument("gp: signal variance must be > 0");
        if (noise_var < 0.0) throw std::invalid_argument("gp: noise variance must be >= 0");
    }
};

/// Squared-exponential GP fit to scalar data; refit is from scratch and
/// cubic in the number of observations.
class GpModel {
  public:
    GpModel(std::vector<double> inputs, std::vector<double> targets, GpParams params)
        : x_(std::move(inputs)), params_(params) {
        params_.validate();
        if (x_.size() != targets.size())
            throw std::invalid_argument("gp: inputs/targets size mismatch");
        const std::size_t n = x_.size();
        if (n == 0) return;
        Eigen::MatrixXd k(n, n);
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b) k(a, b) = kernel(x_[a], x_[b]);
        Eigen::VectorXd y(n);
        for (std::size_t a = 0; a < n; ++a) y(a) = targets[a];
        double jitter = 1e-10;
        for (;;) {
            Eigen::MatrixXd reg = k;
            reg.diagonal().array() += params_.noise_var + jitter;
            llt_.compute(reg);
            if (llt_.info() == Eigen::Success) break;
            jitter *= 10.0;
            if (jitter > 1e-6) throw std::runtime_error("gp: kernel factorization failed");
        }
        alpha_ = llt_.solve(y);
    }

    std::size_t size() const { return x_.size(); }
    const GpParams& params() const { return params_; }

    std::pair<double, double> predict(double query) const {
        const std::size_t n = x_.size();
        if (n == 0) return {0.0, params_.signal_var};
        Eigen::VectorXd ks(n);
        for (std::size_t a = 0; a < n; ++a) ks(a) = kernel(query, x_[a]);
        const double mean = ks.dot(alpha_);
        const Eigen::VectorXd v = llt_.solve(ks);
        double var = params_.signal_var - ks.dot(v);
        var = std::clamp(var, 0.0, params_.signal_var);
        return {mean, var};
    }

  private:
    double kernel(double a, double b) const {
        const double d = (a - b) / params_.length_scale;
        return params_.signal_var * std::exp(-0.5 * d * d);
    }

    std::vector<double> x_;
    GpParams params_;
    Eigen::LLT<Eigen::MatrixXd> llt_;
    Eigen::VectorXd alpha_;
};

inline GpModel gp_fit(std::vector<double> inputs, std::vector<double> targets, GpParams params) {
    return GpModel(std::move(inputs), std::move(targets), params);
}

inline std::pair<double, double> gp_predict(const GpModel& model, double query) {
    return model.predict(query);
}

/// Argmax over grid nodes of mean + z * sqrt(variance); ties to lowest index.
inline std::size_t select_gp_ucb(const GpModel& model, const Grid& g, double z) {
    std::size_t best = 0;
    double best_score = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < g.resolution(); ++i) {
        const auto [mean, var] = model.predict(g.points[i]);
        const double score = mean + z * std::sqrt(var);
        if (score > best_score) {
            best = i;
            best_score = score;
        }
    }
    return best;
}

struct GradientAscentState {
    double position = 0.0;
    double step_size = 0.02;
};

/// One constant-step ascent move, clamped to the domain.
inline GradientAscentState gradient_ascent_step(const GradientAscentState& state, double grad_obs,
                                                double lo, double hi) {
    if (!(state.step_size > 0.0)) throw std::invalid_argument("gradient ascent: step size must be > 0");
    GradientAscentState out = state;
    out.position = std::clamp(state.position + state.step_size * grad_obs, lo, hi);
    return out;
}

/// Uniformly random grid index.
inline std::size_t select_uniform(const Grid& g, std::mt19937_64& eng) {
    return static_cast<std::size_t>(uniform_below(eng, g.resolution()));
}

}  // namespace bugb
