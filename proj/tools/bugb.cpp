// Command-line front end: single runs, sweeps, timing, and posterior
// snapshots. Exit codes: 0 success, 1 runtime failure, 2 flag errors.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "bugb/benchmark.hpp"
#include "bugb/predict_demo.hpp"
#include "bugb/timing.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string check_function_id(const std::string& s) {
    if (s == "f1" || s == "f2" || s == "f3") return {};
    std::error_code ec;
    if (fs::is_regular_file(s, ec)) return {};
    return "must be f1|f2|f3 or a readable function table file: " + s;
}

const std::vector<std::string> kPolicyIds = {"bugb",   "bugb-nograd", "mab-ucb-tuned",
                                             "gp-ucb", "grad-ascent", "uniform"};

/// Flags shared by run and sweep; sweep upgrades function/policy/noise to lists.
struct CommonFlags {
    double noise = 1.0;
    std::size_t resolution = 100;
    std::size_t horizon = 250;
    std::size_t replications = 1000;
    std::uint64_t seed = 1;
    double z = bugb::AcquisitionConfig::kDefaultZ;
    std::size_t workers = 1;
    std::string out = "bugb-out";
    std::vector<std::size_t> checkpoints = bugb::default_checkpoints();

    bool gf_on = false;
    bool gf_off = false;
    double sigma_f_sq = bugb::ChainHyperparams::kDefaultSigmaFSq;
    double sigma_g_sq = bugb::ChainHyperparams::kDefaultSigmaGSq;
    double prior_var = bugb::ChainHyperparams::kDefaultPriorVar;
    std::optional<double> grad_noise;
    std::optional<double> gp_length_scale;
    std::optional<double> gp_signal_var;
    std::optional<double> gp_noise_var;
    double ascent_rate = 0.02;
    bool exact_gradients = false;

    std::optional<bool> gradient_feedback() const {
        if (gf_on) return true;
        if (gf_off) return false;
        return std::nullopt;
    }
};

void add_common_flags(CLI::App* cmd, CommonFlags& f, bool single_noise) {
    if (single_noise)
        cmd->add_option("--noise", f.noise, "Observation noise standard deviation")
            ->check(CLI::NonNegativeNumber);
    cmd->add_option("--resolution", f.resolution, "Grid resolution (number of nodes)")
        ->check(CLI::Range(std::size_t{2}, std::size_t{1000000}));
    cmd->add_option("--horizon", f.horizon, "Arm pulls per replication")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--replications", f.replications, "Independent replications")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--seed", f.seed, "Base seed; replication r derives its streams from (seed, r)");
    cmd->add_option("--z", f.z, "Credible-bound multiplier for UCB acquisition");
    cmd->add_option("--workers", f.workers, "Worker threads over replications")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--out", f.out, "Output directory");
    cmd->add_option("--checkpoints", f.checkpoints, "Cumulative-regret checkpoints")
        ->delimiter(',')
        ->check(CLI::PositiveNumber);
    auto* on = cmd->add_flag("--gradient-feedback", f.gf_on,
                             "Force gradient observations on (bugb defaults to on)");
    auto* off = cmd->add_flag("--no-gradient-feedback", f.gf_off,
                              "Force gradient observations off");
    on->excludes(off);
    cmd->add_option("--sigma-f-sq", f.sigma_f_sq, "Chain process noise on values")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--sigma-g-sq", f.sigma_g_sq, "Chain process noise on gradients")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--prior-var", f.prior_var, "Prior variance for node-0 value and gradient")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--grad-noise", f.grad_noise,
                    "Gradient observation noise SD (default: same as --noise)")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--gp-length-scale", f.gp_length_scale,
                    "GP kernel length scale (default: domain span / 10)")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--gp-signal-var", f.gp_signal_var, "GP kernel signal variance (default: 1)")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--gp-noise-var", f.gp_noise_var,
                    "GP observation noise variance (default: noise^2)")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--ascent-rate", f.ascent_rate,
                    "Gradient-ascent step size as a fraction of the domain span")
        ->check(CLI::PositiveNumber);
    cmd->add_flag("--exact-gradients", f.exact_gradients,
                  "Gradient ascent uses noiseless gradients");
}

bugb::ExperimentConfig to_config(const CommonFlags& f, const std::string& function,
                                 bugb::Policy policy, double noise) {
    bugb::ExperimentConfig cfg;
    cfg.function = function;
    cfg.policy = policy;
    cfg.noise = noise;
    cfg.resolution = f.resolution;
    cfg.horizon = f.horizon;
    cfg.replications = f.replications;
    cfg.seed = f.seed;
    cfg.z = f.z;
    cfg.workers = f.workers;
    cfg.gradient_feedback = f.gradient_feedback();
    cfg.sigma_f_sq = f.sigma_f_sq;
    cfg.sigma_g_sq = f.sigma_g_sq;
    cfg.prior_var = f.prior_var;
    cfg.grad_noise_sd = f.grad_noise;
    cfg.gp_length_scale = f.gp_length_scale;
    cfg.gp_signal_var = f.gp_signal_var;
    cfg.gp_noise_var = f.gp_noise_var;
    cfg.ascent_rate = f.ascent_rate;
    cfg.exact_gradients = f.exact_gradients;
    return cfg;
}

json common_manifest(const CommonFlags& f) {
    json j;
    j["resolution"] = f.resolution;
    j["horizon"] = f.horizon;
    j["replications"] = f.replications;
    j["seed"] = f.seed;
    j["z"] = f.z;
    j["workers"] = f.workers;
    j["checkpoints"] = f.checkpoints;
    if (f.gradient_feedback())
        j["gradient_feedback"] = *f.gradient_feedback();
    else
        j["gradient_feedback"] = nullptr;
    j["sigma_f_sq"] = f.sigma_f_sq;
    j["sigma_g_sq"] = f.sigma_g_sq;
    j["prior_var"] = f.prior_var;
    j["grad_noise"] = f.grad_noise ? json(*f.grad_noise) : json(nullptr);
    j["gp_length_scale"] = f.gp_length_scale ? json(*f.gp_length_scale) : json(nullptr);
    j["gp_signal_var"] = f.gp_signal_var ? json(*f.gp_signal_var) : json(nullptr);
    j["gp_noise_var"] = f.gp_noise_var ? json(*f.gp_noise_var) : json(nullptr);
    j["ascent_rate"] = f.ascent_rate;
    j["exact_gradients"] = f.exact_gradients;
    j["out"] = f.out;
    return j;
}

void write_text(const fs::path& path, const std::string& body) {
    std::ofstream os(path, std::ios::binary);
    os << body;
    if (!os) throw std::runtime_error("cannot write " + path.string());
}

void write_json(const fs::path& path, const json& j) { write_text(path, j.dump(2) + "\n"); }

std::string csv_string(const std::vector<bugb::CsvRow>& rows) {
    std::ostringstream os;
    bugb::write_csv(os, rows);
    return os.str();
}

json checkpoint_json(const bugb::AggregateResult& agg) {
    json arr = json::array();
    for (std::size_t k = 0; k < agg.checkpoints.size(); ++k)
        arr.push_back({{"checkpoint", agg.checkpoints[k]},
                       {"mean_regret", agg.mean_regret[k]},
                       {"stderr", agg.stderr_regret[k]}});
    return arr;
}

// ---------------------------------------------------------------- run

struct RunFlags {
    CommonFlags common;
    std::string function;
    std::string policy;
    bool traces = false;
};

void cmd_run(const RunFlags& f) {
    const bugb::Policy policy = bugb::parse_policy(f.policy);
    if (policy == bugb::Policy::bugb_nograd && f.common.gradient_feedback() == true)
        throw CLI::ValidationError("--gradient-feedback",
                                   "bugb-nograd runs without gradient feedback");
    const bugb::ExperimentConfig cfg = to_config(f.common, f.function, policy, f.common.noise);
    fs::create_directories(f.common.out);

    json manifest = common_manifest(f.common);
    manifest["command"] = "run";
    manifest["function"] = f.function;
    manifest["policy"] = f.policy;
    manifest["noise"] = f.common.noise;
    manifest["traces"] = f.traces;
    write_json(fs::path(f.common.out) / "manifest.json", manifest);

    const std::vector<bugb::RegretRecord> records = bugb::run_experiment(cfg);
    const std::vector<std::size_t> cps =
        bugb::effective_checkpoints(f.common.checkpoints, cfg.horizon);
    const bugb::AggregateResult agg = bugb::aggregate(records, cps);

    write_text(fs::path(f.common.out) / "results.csv", csv_string(bugb::make_rows(cfg, agg)));

    json summary;
    summary["function"] = f.function;
    summary["policy"] = f.policy;
    summary["noise"] = f.common.noise;
    summary["replications"] = agg.replications;
    summary["mean_wall_seconds"] = agg.mean_wall_seconds;
    summary["checkpoints"] = checkpoint_json(agg);
    write_json(fs::path(f.common.out) / "summary.json", summary);

    if (f.traces) {
        std::ostringstream os;
        bugb::write_trace_csv(os, cfg, records);
        write_text(fs::path(f.common.out) / "traces.csv", os.str());
    }

    std::printf("%s %s noise=%g resolution=%zu horizon=%zu replications=%zu seed=%llu\n",
                f.function.c_str(), f.policy.c_str(), f.common.noise, cfg.resolution, cfg.horizon,
                cfg.replications, static_cast<unsigned long long>(cfg.seed));
    for (std::size_t k = 0; k < agg.checkpoints.size(); ++k)
        std::printf("  t=%-4zu mean regret %10.4f  (se %.4f)\n", agg.checkpoints[k],
                    agg.mean_regret[k], agg.stderr_regret[k]);
    std::printf("  mean wall time %.4f s/replication; results in %s\n", agg.mean_wall_seconds,
                f.common.out.c_str());
}

// ---------------------------------------------------------------- sweep

struct SweepFlags {
    CommonFlags common;
    std::vector<std::string> functions = {"f1", "f2", "f3"};
    std::vector<std::string> policies = kPolicyIds;
    std::vector<double> noises = {0.01, 0.1, 1.0, 5.0};
};

void cmd_sweep(const SweepFlags& f) {
    fs::create_directories(f.common.out);
    json manifest = common_manifest(f.common);
    manifest["command"] = "sweep";
    manifest["functions"] = f.functions;
    manifest["policies"] = f.policies;
    manifest["noises"] = f.noises;
    write_json(fs::path(f.common.out) / "manifest.json", manifest);

    const std::vector<std::size_t> cps =
        bugb::effective_checkpoints(f.common.checkpoints, f.common.horizon);
    std::vector<bugb::CsvRow> rows;
    json cells = json::array();
    // function-averaged mean regret per (policy, noise, checkpoint)
    std::map<std::pair<std::string, double>, std::vector<double>> table;
    for (const std::string& pol_id : f.policies) {
        const bugb::Policy policy = bugb::parse_policy(pol_id);
        if (policy == bugb::Policy::bugb_nograd && f.common.gradient_feedback() == true)
            throw CLI::ValidationError("--gradient-feedback",
                                       "bugb-nograd runs without gradient feedback");
        for (double noise : f.noises) {
            std::vector<double> avg(cps.size(), 0.0);
            for (const std::string& function : f.functions) {
                const bugb::ExperimentConfig cfg = to_config(f.common, function, policy, noise);
                const bugb::AggregateResult agg = bugb::aggregate(bugb::run_experiment(cfg), cps);
                for (auto& row : bugb::make_rows(cfg, agg)) rows.push_back(std::move(row));
                cells.push_back({{"function", function},
                                 {"policy", pol_id},
                                 {"noise", noise},
                                 {"mean_wall_seconds", agg.mean_wall_seconds},
                                 {"checkpoints", checkpoint_json(agg)}});
                for (std::size_t k = 0; k < cps.size(); ++k)
                    avg[k] += agg.mean_regret[k] / static_cast<double>(f.functions.size());
                std::printf("%-4s %-13s noise=%-5g final mean regret %10.4f\n", function.c_str(),
                            pol_id.c_str(), noise, agg.mean_regret.back());
                std::fflush(stdout);
            }
            table[{pol_id, noise}] = avg;
        }
    }

    write_text(fs::path(f.common.out) / "results.csv", csv_string(rows));

    // Table-1 shape: rows = (policy, noise), columns = checkpoints.
    std::ostringstream t1;
    t1 << "policy,noise";
    for (std::size_t c : cps) t1 << ',' << c;
    t1 << '\n';
    for (const std::string& pol_id : f.policies)
        for (double noise : f.noises) {
            t1 << pol_id << ',' << bugb::format_double(noise);
            for (double v : table.at({pol_id, noise})) t1 << ',' << bugb::format_double(v);
            t1 << '\n';
        }
    write_text(fs::path(f.common.out) / "table_regret_vs_time.csv", t1.str());

    // Table-2 shape: rows = policies, columns = noise levels, at the last checkpoint.
    std::ostringstream t2;
    t2 << "policy";
    for (double noise : f.noises) t2 << ',' << bugb::format_double(noise);
    t2 << '\n';
    for (const std::string& pol_id : f.policies) {
        t2 << pol_id;
        for (double noise : f.noises)
            t2 << ',' << bugb::format_double(table.at({pol_id, noise}).back());
        t2 << '\n';
    }
    write_text(fs::path(f.common.out) / "table_regret_vs_noise.csv", t2.str());

    json summary;
    summary["cells"] = cells;
    summary["checkpoints"] = cps;
    write_json(fs::path(f.common.out) / "summary.json", summary);
    std::printf("results in %s\n", f.common.out.c_str());
}

// ---------------------------------------------------------------- timing

struct TimingFlags {
    CommonFlags common;
    std::string function = "f1";
    std::vector<std::string> policies = kPolicyIds;
    std::vector<std::size_t> resolutions = {1000, 10000};
    std::vector<std::size_t> gp_obs = {100, 200};
};

void cmd_timing(const TimingFlags& f) {
    fs::create_directories(f.common.out);
    json manifest = common_manifest(f.common);
    manifest["command"] = "timing";
    manifest["function"] = f.function;
    manifest["policies"] = f.policies;
    manifest["noise"] = f.common.noise;
    manifest["resolutions"] = f.resolutions;
    manifest["gp_obs"] = f.gp_obs;
    write_json(fs::path(f.common.out) / "manifest.json", manifest);

    json out;
    out["policies"] = json::array();
    for (const std::string& pol_id : f.policies) {
        bugb::ExperimentConfig cfg =
            to_config(f.common, f.function, bugb::parse_policy(pol_id), f.common.noise);
        const std::vector<bugb::RegretRecord> records = bugb::run_experiment(cfg);
        const bugb::AggregateResult agg =
            bugb::aggregate(records, bugb::effective_checkpoints({cfg.horizon}, cfg.horizon));
        out["policies"].push_back({{"policy", pol_id}, {"mean_wall_seconds", agg.mean_wall_seconds}});
        std::printf("%-13s %.6f s/replication\n", pol_id.c_str(), agg.mean_wall_seconds);
        std::fflush(stdout);
    }

    out["bugb_pass"] = json::array();
    for (std::size_t r : f.resolutions) {
        const double s = bugb::bugb_pass_seconds(r);
        out["bugb_pass"].push_back({{"resolution", r}, {"seconds_per_pass", s}});
        std::printf("bugb smoothing pass, resolution %-6zu %.6e s\n", r, s);
    }
    if (f.resolutions.size() >= 2) {
        const double s0 = out["bugb_pass"].front()["seconds_per_pass"].get<double>();
        const double s1 = out["bugb_pass"].back()["seconds_per_pass"].get<double>();
        std::printf("bugb pass-time ratio (%zu : %zu) = %.2f\n", f.resolutions.back(),
                    f.resolutions.front(), s1 / s0);
    }

    out["gp_refit"] = json::array();
    for (std::size_t n : f.gp_obs) {
        const double s = bugb::gp_refit_seconds(n);
        out["gp_refit"].push_back({{"observations", n}, {"seconds_per_fit", s}});
        std::printf("gp refit, %-4zu observations %.6e s\n", n, s);
    }
    if (f.gp_obs.size() >= 2) {
        const double s0 = out["gp_refit"].front()["seconds_per_fit"].get<double>();
        const double s1 = out["gp_refit"].back()["seconds_per_fit"].get<double>();
        std::printf("gp refit-time ratio (%zu : %zu) = %.2f\n", f.gp_obs.back(), f.gp_obs.front(),
                    s1 / s0);
    }

    write_json(fs::path(f.common.out) / "timing.json", out);
    std::printf("results in %s\n", f.common.out.c_str());
}

// ---------------------------------------------------------------- predict-demo

struct PredictFlags {
    std::string function;
    std::size_t observations = 5;
    double noise = 1.0;
    std::size_t resolution = 100;
    std::uint64_t seed = 1;
    double z = bugb::AcquisitionConfig::kDefaultZ;
    double level = 0.99;
    bool no_gradient_feedback = false;
    std::optional<double> grad_noise;
    double sigma_f_sq = bugb::ChainHyperparams::kDefaultSigmaFSq;
    double sigma_g_sq = bugb::ChainHyperparams::kDefaultSigmaGSq;
    double prior_var = bugb::ChainHyperparams::kDefaultPriorVar;
    std::string out = "bugb-out";
};

void cmd_predict_demo(const PredictFlags& f) {
    bugb::PredictDemoConfig cfg;
    cfg.function = f.function;
    cfg.observations = f.observations;
    cfg.noise = f.noise;
    cfg.resolution = f.resolution;
    cfg.seed = f.seed;
    cfg.z = f.z;
    cfg.level = f.level;
    cfg.gradient_feedback = !f.no_gradient_feedback;
    cfg.grad_noise_sd = f.grad_noise;
    cfg.sigma_f_sq = f.sigma_f_sq;
    cfg.sigma_g_sq = f.sigma_g_sq;
    cfg.prior_var = f.prior_var;

    fs::create_directories(f.out);
    json manifest;
    manifest["command"] = "predict-demo";
    manifest["function"] = f.function;
    manifest["observations"] = f.observations;
    manifest["noise"] = f.noise;
    manifest["resolution"] = f.resolution;
    manifest["seed"] = f.seed;
    manifest["z"] = f.z;
    manifest["level"] = f.level;
    manifest["gradient_feedback"] = cfg.gradient_feedback;
    manifest["grad_noise"] = f.grad_noise ? json(*f.grad_noise) : json(nullptr);
    manifest["sigma_f_sq"] = f.sigma_f_sq;
    manifest["sigma_g_sq"] = f.sigma_g_sq;
    manifest["prior_var"] = f.prior_var;
    manifest["out"] = f.out;
    write_json(fs::path(f.out) / "manifest.json", manifest);

    const bugb::PredictDemoResult res = bugb::run_predict_demo(cfg);
    std::ostringstream os;
    os << "x,true_f,mean,lower,upper\n";
    for (const auto& row : res.rows)
        os << bugb::format_double(row.x) << ',' << bugb::format_double(row.true_f) << ','
           << bugb::format_double(row.mean) << ',' << bugb::format_double(row.lower) << ','
           << bugb::format_double(row.upper) << '\n';
    write_text(fs::path(f.out) / "prediction.csv", os.str());

    std::printf("pulled nodes:");
    for (std::size_t node : res.pulled) std::printf(" %zu", node);
    std::printf("\n%.1f%% of nodes inside the %g%% band; results in %s\n", 100.0 * res.coverage,
                100.0 * f.level, f.out.c_str());
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"BUG-B: Bayesian chain optimization on a grid, with baselines"};
    app.option_defaults()->always_capture_default();
    app.require_subcommand(1);

    CLI::Validator function_id(check_function_id, "FUNCTION", "function id");

    RunFlags run;
    CLI::App* run_cmd = app.add_subcommand("run", "One experiment cell, aggregated over replications");
    run_cmd->add_option("--function", run.function, "Objective: f1|f2|f3 or a table file")
        ->required()
        ->check(function_id);
    run_cmd->add_option("--policy", run.policy, "Arm-selection policy")
        ->required()
        ->check(CLI::IsMember(kPolicyIds));
    add_common_flags(run_cmd, run.common, true);
    run_cmd->add_flag("--traces", run.traces, "Also write per-step regret traces");
    run_cmd->callback([&run] { cmd_run(run); });

    SweepFlags sweep;
    CLI::App* sweep_cmd =
        app.add_subcommand("sweep", "Cross product of functions x policies x noise levels");
    sweep_cmd->add_option("--function", sweep.functions, "Objectives to sweep")
        ->delimiter(',')
        ->check(function_id);
    sweep_cmd->add_option("--policy", sweep.policies, "Policies to sweep")
        ->delimiter(',')
        ->check(CLI::IsMember(kPolicyIds));
    sweep_cmd->add_option("--noise", sweep.noises, "Noise SDs to sweep")
        ->delimiter(',')
        ->check(CLI::NonNegativeNumber);
    add_common_flags(sweep_cmd, sweep.common, false);
    sweep_cmd->callback([&sweep] { cmd_sweep(sweep); });

    TimingFlags timing;
    CLI::App* timing_cmd =
        app.add_subcommand("timing", "Wall-time per policy plus inference scaling measurements");
    timing_cmd->add_option("--function", timing.function, "Objective: f1|f2|f3 or a table file")
        ->check(function_id);
    timing_cmd->add_option("--policy", timing.policies, "Policies to time")
        ->delimiter(',')
        ->check(CLI::IsMember(kPolicyIds));
    timing_cmd
        ->add_option("--resolutions", timing.resolutions,
                     "Grid resolutions for smoothing-pass scaling")
        ->delimiter(',')
        ->check(CLI::Range(std::size_t{2}, std::size_t{1000000}));
    timing_cmd->add_option("--gp-obs", timing.gp_obs, "Training-set sizes for GP refit scaling")
        ->delimiter(',')
        ->check(CLI::Range(std::size_t{2}, std::size_t{100000}));
    timing.common.replications = 5;
    add_common_flags(timing_cmd, timing.common, true);
    timing_cmd->callback([&timing] { cmd_timing(timing); });

    PredictFlags predict;
    CLI::App* predict_cmd =
        app.add_subcommand("predict-demo", "Posterior snapshot after a few UCB-driven rounds");
    predict_cmd->add_option("--function", predict.function, "Objective: f1|f2|f3 or a table file")
        ->required()
        ->check(function_id);
    predict_cmd->add_option("--observations", predict.observations, "Rounds to run before the snapshot");
    predict_cmd->add_option("--noise", predict.noise, "Observation noise standard deviation")
        ->check(CLI::NonNegativeNumber);
    predict_cmd->add_option("--resolution", predict.resolution, "Grid resolution")
        ->check(CLI::Range(std::size_t{2}, std::size_t{1000000}));
    predict_cmd->add_option("--seed", predict.seed, "Seed for the environment noise");
    predict_cmd->add_option("--z", predict.z, "Credible-bound multiplier for UCB acquisition");
    predict_cmd->add_option("--level", predict.level, "Two-sided credible level for the band")
        ->check(CLI::Range(1e-9, 1.0 - 1e-9));
    predict_cmd->add_flag("--gradient-feedback", "Gradient observations on (the default)");
    predict_cmd->add_flag("--no-gradient-feedback", predict.no_gradient_feedback,
                          "Value observations only");
    predict_cmd->add_option("--grad-noise", predict.grad_noise,
                            "Gradient observation noise SD (default: same as --noise)")
        ->check(CLI::NonNegativeNumber);
    predict_cmd->add_option("--sigma-f-sq", predict.sigma_f_sq, "Chain process noise on values")
        ->check(CLI::NonNegativeNumber);
    predict_cmd->add_option("--sigma-g-sq", predict.sigma_g_sq, "Chain process noise on gradients")
        ->check(CLI::NonNegativeNumber);
    predict_cmd->add_option("--prior-var", predict.prior_var,
                            "Prior variance for node-0 value and gradient")
        ->check(CLI::NonNegativeNumber);
    predict_cmd->add_option("--out", predict.out, "Output directory");
    predict_cmd->callback([&predict] { cmd_predict_demo(predict); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
