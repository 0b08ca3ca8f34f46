#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <vector>

#include "bugb/baselines.hpp"
#include "bugb/inference.hpp"

namespace bugb {

inline volatile double timing_sink = 0.0;

/// Repeats op until at least 0.1 s has elapsed and reports seconds per call;
/// minimum over five such measurements.
template <class Op>
double min_seconds_per_call(Op&& op) {
    using clock = std::chrono::steady_clock;
    double best = std::numeric_limits<double>::infinity();
    for (int rep = 0; rep < 5; ++rep) {
        std::size_t calls = 0;
        const auto start = clock::now();
        double elapsed = 0.0;
        do {
            op();
            ++calls;
            elapsed = std::chrono::duration<double>(clock::now() - start).count();
        } while (elapsed < 0.1);
        best = std::min(best, elapsed / static_cast<double>(calls));
    }
    return best;
}

/// Wall time of one full filter+smooth pass at the given resolution, with a
/// fixed 100-observation load. The belief and transition model live outside
/// the timed loop so the probe measures the pass itself, not allocator
/// traffic — on glibc the node arrays at high resolutions would otherwise be
/// mapped and unmapped on every call.
inline double bugb_pass_seconds(std::size_t resolution) {
    const Grid grid = build_uniform_grid(0.0, 1.0, resolution);
    ChainHyperparams hyper;
    std::vector<Observation> obs;
    for (std::size_t k = 0; k < 50; ++k) {
        const std::size_t node = k * (resolution - 1) / 49;
        obs.push_back({node, ObsKind::value, std::sin(static_cast<double>(k)), 1.0});
        obs.push_back({node, ObsKind::gradient, std::cos(static_cast<double>(k)), 1.0});
    }
    const TransitionModel tm(grid, hyper);
    PosteriorBelief belief;
    return min_seconds_per_call([&] {
        forward_filter_into(grid, hyper, obs, belief);
        backward_smooth(belief, tm);
        timing_sink = timing_sink + belief.smoothed.front().mf;
    });
}

/// Wall time of one GP refit (kernel build + factorization) on n points.
inline double gp_refit_seconds(std::size_t n) {
    std::vector<double> xs(n), ys(n);
    for (std::size_t i = 0; i < n; ++i) {
        xs[i] = static_cast<double>(i) / static_cast<double>(n - 1);
        ys[i] = std::sin(6.28318530717958647 * xs[i]);
    }
    GpParams params;
    params.length_scale = 0.1;
    params.noise_var = 1.0;
    return min_seconds_per_call([&] {
        const GpModel model = gp_fit(xs, ys, params);
        timing_sink = timing_sink + gp_predict(model, 0.5).first;
    });
}

}  // namespace bugb
