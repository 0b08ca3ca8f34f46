#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "bugb/inference.hpp"

namespace bugb {

enum class AcquisitionStrategy { ucb, thompson };

struct AcquisitionConfig {
    AcquisitionStrategy strategy = AcquisitionStrategy::ucb;
    double z = kDefaultZ;

    /// One-sided 95% standard-normal quantile, the paper's credible bound.
    static constexpr double kDefaultZ = 1.6449;

    void validate() const {
        if (!(z >= 0.0) || !std::isfinite(z))
            throw std::invalid_argument("acquisition: z must be finite and >= 0");
    }
};

/// Upper credible bound per node: mu_i + z * sigma_i on the smoothed value
/// marginals.
inline std::vector<double> ucb_scores(const PosteriorBelief& belief, double z) {
    std::vector<double> scores(belief.smoothed.size());
    for (std::size_t i = 0; i < scores.size(); ++i) {
        const NodeGaussian& s = belief.smoothed[i];
        scores[i] = s.mf + z * std::sqrt(std::max(s.cov.ff, 0.0));
    }
    return scores;
}

namespace detail {

inline std::size_t argmax_lowest_tie(const std::vector<double>& v) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < v.size(); ++i)
        if (v[i] > v[best]) best = i;
    return best;
}

}  // namespace detail

/// Argmax of ucb_scores; ties resolve to the lowest index.
inline std::size_t select_ucb(const PosteriorBelief& belief, double z) {
    if (belief.smoothed.empty())
        throw std::invalid_argument("select_ucb: belief has no smoothed marginals");
    return detail::argmax_lowest_tie(ucb_scores(belief, z));
}

/// Thompson choice: argmax of the value components of one joint posterior
/// draw; ties resolve to the lowest index.
inline std::size_t select_thompson(const PosteriorBelief& belief, const TransitionModel& tm,
                                   GaussianSampler& rng) {
    const std::vector<NodeGaussian> traj = sample_trajectory(belief, tm, rng);
    std::size_t best = 0;
    for (std::size_t i = 1; i < traj.size(); ++i)
        if (traj[i].mf > traj[best].mf) best = i;
    return best;
}

}  // namespace bugb
