#pragma once

#include <atomic>
#include <charconv>
#include <chrono>
#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "bugb/baselines.hpp"
#include "bugb/environment.hpp"
#include "bugb/optimizer.hpp"

namespace bugb {

enum class Policy { bugb, bugb_nograd, mab_ucb_tuned, gp_ucb, grad_ascent, uniform };

inline const char* policy_id(Policy p) {
    switch (p) {
        case Policy::bugb: return "bugb";
        case Policy::bugb_nograd: return "bugb-nograd";
        case Policy::mab_ucb_tuned: return "mab-ucb-tuned";
        case Policy::gp_ucb: return "gp-ucb";
        case Policy::grad_ascent: return "grad-ascent";
        case Policy::uniform: return "uniform";
    }
    return "?";
}

inline Policy parse_policy(const std::string& id) {
    for (Policy p : {Policy::bugb, Policy::bugb_nograd, Policy::mab_ucb_tuned, Policy::gp_ucb,
                     Policy::grad_ascent, Policy::uniform})
        if (id == policy_id(p)) return p;
    throw std::invalid_argument("unknown policy id: " + id);
}

inline std::vector<Policy> all_policies() {
    return {Policy::bugb, Policy::bugb_nograd, Policy::mab_ucb_tuned,
            Policy::gp_ucb, Policy::grad_ascent, Policy::uniform};
}

/// One benchmark cell: a (function, policy, noise, resolution, horizon)
/// combination with its replication count and seed. Optional fields override
/// policy defaults.
struct ExperimentConfig {
    std::string function = "f1";
    Policy policy = Policy::bugb;
    double noise = 1.0;
    std::size_t resolution = 100;
    std::size_t horizon = 250;
    std::size_t replications = 1000;
    std::uint64_t seed = 1;
    double z = AcquisitionConfig::kDefaultZ;
    std::size_t workers = 1;

    std::optional<bool> gradient_feedback;  // default: on for bugb, off otherwise
    double sigma_f_sq = ChainHyperparams::kDefaultSigmaFSq;
    double sigma_g_sq = ChainHyperparams::kDefaultSigmaGSq;
    double prior_var = ChainHyperparams::kDefaultPriorVar;
    std::optional<double> grad_noise_sd;    // default: same as value noise
    std::optional<double> gp_length_scale;  // default: domain span / 10
    std::optional<double> gp_signal_var;    // default: 1
    std::optional<double> gp_noise_var;     // default: noise^2
    double ascent_rate = 0.02;              // step = rate * domain span
    bool exact_gradients = false;

    void validate() const {
        if (horizon < 1) throw std::invalid_argument("config: horizon must be >= 1");
        if (replications < 1) throw std::invalid_argument("config: replications must be >= 1");
        if (resolution < 2) throw std::invalid_argument("config: resolution must be >= 2");
        if (noise < 0.0) throw std::invalid_argument("config: noise must be >= 0");
    }

    bool wants_gradients() const {
        return gradient_feedback.value_or(policy == Policy::bugb);
    }
};

namespace detail {

inline RegretRecord run_bugb_policy(const ExperimentConfig& cfg, Environment& env,
                                    GaussianSampler& policy_rng) {
    BugbConfig bc;
    bc.grid = env.grid();
    bc.hyper.sigma_f_sq = cfg.sigma_f_sq;
    bc.hyper.sigma_g_sq = cfg.sigma_g_sq;
    bc.hyper.prior_cov = {cfg.prior_var, 0.0, cfg.prior_var};
    bc.hyper.obs_value_var = cfg.noise * cfg.noise;
    const double gsd = cfg.grad_noise_sd.value_or(cfg.noise);
    bc.hyper.obs_grad_var = gsd * gsd;
    bc.acquisition.z = cfg.z;
    bc.gradient_feedback = cfg.wants_gradients();
    return run_episode(bc, env, cfg.horizon, policy_rng);
}

inline RegretRecord run_mab_policy(const ExperimentConfig& cfg, Environment& env) {
    ArmStats stats(env.grid().resolution());
    RegretRecord rec;
    for (std::size_t t = 0; t < cfg.horizon; ++t) {
        const std::size_t arm = select_ucb_tuned(stats);
        rec.push(arm, env.instantaneous_regret(arm));
        stats.record(arm, env.observe_value(arm));
    }
    return rec;
}

inline RegretRecord run_gp_policy(const ExperimentConfig& cfg, Environment& env) {
    GpParams params;
    params.signal_var = cfg.gp_signal_var.value_or(1.0);
    params.length_scale =
        cfg.gp_length_scale.value_or((env.grid().hi() - env.grid().lo()) / 10.0);
    params.noise_var = cfg.gp_noise_var.value_or(cfg.noise * cfg.noise);
    std::vector<double> xs, ys;
    xs.reserve(cfg.horizon);
    ys.reserve(cfg.horizon);
    RegretRecord rec;
    for (std::size_t t = 0; t < cfg.horizon; ++t) {
        const GpModel model = gp_fit(xs, ys, params);
        const std::size_t node = select_gp_ucb(model, env.grid(), cfg.z);
        rec.push(node, env.instantaneous_regret(node));
        xs.push_back(env.grid().points[node]);
        ys.push_back(env.observe_value(node));
    }
    return rec;
}

inline RegretRecord run_grad_ascent_policy(const ExperimentConfig& cfg, Environment& env,
                                           GaussianSampler& policy_rng) {
    const double lo = env.grid().lo();
    const double hi = env.grid().hi();
    GradientAscentState state;
    state.position = lo + (hi - lo) * uniform01(policy_rng.engine());
    state.step_size = cfg.ascent_rate * (hi - lo);
    RegretRecord rec;
    for (std::size_t t = 0; t < cfg.horizon; ++t) {
        // Regret is charged at the continuous position; the snapped node is
        // recorded for tracing only.
        const double reg = std::max(env.continuous_regret(state.position), 0.0);
        rec.push(snap_to_grid(env.grid(), state.position), reg);
        const double grad = cfg.exact_gradients ? env.function().gradient(state.position)
                                                : env.observe_gradient_at(state.position);
        state = gradient_ascent_step(state, grad, lo, hi);
    }
    return rec;
}

inline RegretRecord run_uniform_policy(const ExperimentConfig& cfg, Environment& env,
                                       GaussianSampler& policy_rng) {
    RegretRecord rec;
    for (std::size_t t = 0; t < cfg.horizon; ++t) {
        const std::size_t node = select_uniform(env.grid(), policy_rng.engine());
        rec.push(node, env.instantaneous_regret(node));
    }
    return rec;
}

}  // namespace detail

/// Runs one seeded replication. All randomness derives from
/// (seed, replication id, stream): stream 0 is environment value noise,
/// 1 is policy randomness, 2 is environment gradient noise.
inline RegretRecord run_replication(const ExperimentConfig& cfg, std::uint64_t replication) {
    cfg.validate();
    TestFunction fn = make_function(cfg.function);
    const Grid grid = build_uniform_grid(fn.lo, fn.hi, cfg.resolution);
    const double gsd = cfg.grad_noise_sd.value_or(cfg.noise);
    Environment env(std::move(fn), grid, cfg.noise, gsd, cfg.seed, replication);
    GaussianSampler policy_rng(make_engine(cfg.seed, replication, 1));

    const auto start = std::chrono::steady_clock::now();
    RegretRecord rec;
    switch (cfg.policy) {
        case Policy::bugb:
        case Policy::bugb_nograd:
            rec = detail::run_bugb_policy(cfg, env, policy_rng);
            break;
        case Policy::mab_ucb_tuned:
            rec = detail::run_mab_policy(cfg, env);
            break;
        case Policy::gp_ucb:
            rec = detail::run_gp_policy(cfg, env);
            break;
        case Policy::grad_ascent:
            rec = detail::run_grad_ascent_policy(cfg, env, policy_rng);
            break;
        case Policy::uniform:
            rec = detail::run_uniform_policy(cfg, env, policy_rng);
            break;
    }
    rec.replication = replication;
    rec.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rec;
}

/// All replications of one config. Worker threads split replication ids;
/// results are ordered by id, so output never depends on scheduling.
inline std::vector<RegretRecord> run_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    std::vector<RegretRecord> records(cfg.replications);
    const std::size_t workers = std::max<std::size_t>(1, cfg.workers);
    if (workers == 1) {
        for (std::uint64_t r = 0; r < cfg.replications; ++r)
            records[r] = run_replication(cfg, r);
        return records;
    }
    std::atomic<std::uint64_t> next{0};
    auto drain = [&] {
        for (;;) {
            const std::uint64_t r = next.fetch_add(1);
            if (r >= cfg.replications) return;
            records[r] = run_replication(cfg, r);
        }
    };
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w + 1 < workers; ++w) pool.emplace_back(drain);
    drain();
    for (auto& t : pool) t.join();
    return records;
}

struct AggregateResult {
    std::vector<std::size_t> checkpoints;
    std::vector<double> mean_regret;
    std::vector<double> stderr_regret;
    std::size_t replications = 0;
    double mean_wall_seconds = 0.0;
};

inline std::vector<std::size_t> default_checkpoints() { return {25, 50, 100, 250}; }

/// Checkpoints restricted to the horizon; falls back to {horizon} so short
/// runs still report something.
inline std::vector<std::size_t> effective_checkpoints(std::vector<std::size_t> requested,
                                                      std::size_t horizon) {
    std::vector<std::size_t> out;
    for (std::size_t c : requested)
        if (c >= 1 && c <= horizon) out.push_back(c);
    if (out.empty()) out.push_back(horizon);
    return out;
}

/// Mean and standard error of cumulative regret at each checkpoint.
inline AggregateResult aggregate(const std::vector<RegretRecord>& records,
                                 const std::vector<std::size_t>& checkpoints) {
    if (records.empty()) throw std::invalid_argument("aggregate: no records");
    const std::size_t horizon = records.front().cumulative.size();
    for (const auto& r : records)
        if (r.cumulative.size() != horizon)
            throw std::invalid_argument("aggregate: mismatched horizons");
    AggregateResult out;
    out.checkpoints = checkpoints;
    out.replications = records.size();
    const double n = static_cast<double>(records.size());
    for (std::size_t c : checkpoints) {
        if (c < 1 || c > horizon) throw std::invalid_argument("aggregate: checkpoint beyond horizon");
        double sum = 0.0;
        for (const auto& r : records) sum += r.cumulative[c - 1];
        const double mean = sum / n;
        double ss = 0.0;
        for (const auto& r : records) {
            const double d = r.cumulative[c - 1] - mean;
            ss += d * d;
        }
        const double se = records.size() < 2 ? 0.0 : std::sqrt(ss / (n - 1.0) / n);
        out.mean_regret.push_back(mean);
        out.stderr_regret.push_back(se);
    }
    for (const auto& r : records) out.mean_wall_seconds += r.wall_seconds;
    out.mean_wall_seconds /= n;
    return out;
}

/// Shortest round-trip decimal rendering, so emitted CSV is byte-stable.
inline std::string format_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

inline constexpr const char* kCsvHeader =
    "function,policy,noise,resolution,horizon,checkpoint,replications,mean_regret,stderr,seed";

/// One emitted CSV line (long format).
struct CsvRow {
    std::string function;
    std::string policy;
    double noise = 0.0;
    std::size_t resolution = 0;
    std::size_t horizon = 0;
    std::size_t checkpoint = 0;
    std::size_t replications = 0;
    double mean_regret = 0.0;
    double stderr_regret = 0.0;
    std::uint64_t seed = 0;
};

inline std::vector<CsvRow> make_rows(const ExperimentConfig& cfg, const AggregateResult& agg) {
    std::vector<CsvRow> rows;
    for (std::size_t k = 0; k < agg.checkpoints.size(); ++k) {
        CsvRow row;
        row.function = cfg.function;
        row.policy = policy_id(cfg.policy);
        row.noise = cfg.noise;
        row.resolution = cfg.resolution;
        row.horizon = cfg.horizon;
        row.checkpoint = agg.checkpoints[k];
        row.replications = agg.replications;
        row.mean_regret = agg.mean_regret[k];
        row.stderr_regret = agg.stderr_regret[k];
        row.seed = cfg.seed;
        rows.push_back(std::move(row));
    }
    return rows;
}

inline void write_csv(std::ostream& os, const std::vector<CsvRow>& rows) {
    os << kCsvHeader << '\n';
    for (const auto& r : rows) {
        os << r.function << ',' << r.policy << ',' << format_double(r.noise) << ','
           << r.resolution << ',' << r.horizon << ',' << r.checkpoint << ',' << r.replications
           << ',' << format_double(r.mean_regret) << ',' << format_double(r.stderr_regret) << ','
           << r.seed << '\n';
    }
}

/// Per-step trace rows (for regret-over-time plots).
inline void write_trace_csv(std::ostream& os, const ExperimentConfig& cfg,
                            const std::vector<RegretRecord>& records) {
    os << "function,policy,noise,replication,step,node,instantaneous_regret,cumulative_regret\n";
    for (const auto& rec : records) {
        for (std::size_t t = 0; t < rec.cumulative.size(); ++t) {
            os << cfg.function << ',' << policy_id(cfg.policy) << ',' << format_double(cfg.noise)
               << ',' << rec.replication << ',' << (t + 1) << ',' << rec.nodes[t] << ','
               << format_double(rec.instantaneous[t]) << ',' << format_double(rec.cumulative[t])
               << '\n';
        }
    }
}

}  // namespace bugb
