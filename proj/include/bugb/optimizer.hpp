#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "bugb/acquisition.hpp"
#include "bugb/environment.hpp"
#include "bugb/inference.hpp"
#include "bugb/model.hpp"

namespace bugb {

struct BugbConfig {
    Grid grid;
    ChainHyperparams hyper;
    AcquisitionConfig acquisition;
    bool gradient_feedback = true;

    void validate() const {
        if (grid.resolution() < 2) throw std::invalid_argument("config: grid too small");
        hyper.validate();
        acquisition.validate();
    }
};

/// Ask/tell BUG-B loop. The posterior is recomputed by a full filter+smooth
/// pass after every tell; the belief is always re-derivable from the stored
/// observation set.
class BugbOptimizer {
  public:
    explicit BugbOptimizer(BugbConfig cfg)
        : cfg_(validated(std::move(cfg))), tm_(cfg_.grid, cfg_.hyper) {
        belief_ = smooth(cfg_.grid, cfg_.hyper, observations_);
    }

    const BugbConfig& config() const { return cfg_; }
    const PosteriorBelief& belief() const { return belief_; }
    const std::vector<Observation>& observations() const { return observations_; }
    std::size_t iterations() const { return iterations_; }

    /// Node chosen by the configured acquisition; does not mutate state
    /// except for consuming acquisition randomness under Thompson.
    std::size_t ask(GaussianSampler& acq_rng) const {
        if (cfg_.acquisition.strategy == AcquisitionStrategy::thompson)
            return select_thompson(belief_, tm_, acq_rng);
        return select_ucb(belief_, cfg_.acquisition.z);
    }

    /// UCB ask without a random stream; rejects Thompson configs.
    std::size_t ask() const {
        if (cfg_.acquisition.strategy != AcquisitionStrategy::ucb)
            throw std::logic_error("ask(): Thompson acquisition needs a random stream");
        return select_ucb(belief_, cfg_.acquisition.z);
    }

    void tell(std::size_t node, double value_obs, std::optional<double> grad_obs = {}) {
        if (node >= cfg_.grid.resolution())
            throw std::out_of_range("tell: node outside grid");
        if (grad_obs && !cfg_.gradient_feedback)
            throw std::logic_error("tell: gradient supplied while gradient feedback disabled");
        observations_.push_back({node, ObsKind::value, value_obs, cfg_.hyper.obs_value_var});
        if (grad_obs)
            observations_.push_back({node, ObsKind::gradient, *grad_obs, cfg_.hyper.obs_grad_var});
        belief_ = smooth(cfg_.grid, cfg_.hyper, observations_);
        ++iterations_;
    }

  private:
    static BugbConfig validated(BugbConfig cfg) {
        cfg.validate();
        return cfg;
    }

    BugbConfig cfg_;
    TransitionModel tm_;
    std::vector<Observation> observations_;
    PosteriorBelief belief_;
    std::size_t iterations_ = 0;
};

/// Regret trace of one episode.
struct RegretRecord {
    std::vector<std::size_t> nodes;
    std::vector<double> instantaneous;
    std::vector<double> cumulative;
    std::uint64_t replication = 0;
    double wall_seconds = 0.0;

    void push(std::size_t node, double regret) {
        nodes.push_back(node);
        instantaneous.push_back(regret);
        cumulative.push_back((cumulative.empty() ? 0.0 : cumulative.back()) + regret);
    }
};

/// Runs `horizon` ask/observe/tell rounds of BUG-B against an environment.
/// With gradient feedback on, each pull also requests a gradient observation
/// at the pulled node.
inline RegretRecord run_episode(const BugbConfig& cfg, Environment& env, std::size_t horizon,
                                GaussianSampler& acq_rng) {
    if (horizon < 1) throw std::invalid_argument("run_episode: horizon must be >= 1");
    BugbOptimizer opt(cfg);
    RegretRecord rec;
    for (std::size_t t = 0; t < horizon; ++t) {
        const std::size_t node = opt.ask(acq_rng);
        rec.push(node, env.instantaneous_regret(node));
        const double y = env.observe_value(node);
        if (cfg.gradient_feedback)
            opt.tell(node, y, env.observe_gradient(node));
        else
            opt.tell(node, y);
    }
    return rec;
}

}  // namespace bugb
