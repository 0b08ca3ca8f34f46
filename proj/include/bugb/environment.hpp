#pragma once

#include <cmath>
#include <cstddef>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "bugb/grid.hpp"
#include "bugb/rng.hpp"

namespace bugb {

/// Objective with analytic gradient on a closed domain.
struct TestFunction {
    std::string id;
    std::function<double(double)> value;
    std::function<double(double)> gradient;
    double lo = 0.0;
    double hi = 1.0;
};

/// Sloped unimodal: global max at x = 0.8.
inline TestFunction make_f1() {
    return {"f1", [](double x) { return 1.0 - 2.5 * (x - 0.8) * (x - 0.8); },
            [](double x) { return -5.0 * (x - 0.8); }, 0.0, 1.0};
}

/// Peaked multimodal: three near-equal Gaussian bumps, global max near 0.65.
inline TestFunction make_f2() {
    constexpr double h[3] = {0.9, 1.0, 0.85};
    constexpr double c[3] = {0.2, 0.65, 0.9};
    constexpr double w[3] = {0.05, 0.03, 0.04};
    auto value = [=](double x) {
        double s = 0.0;
        for (int k = 0; k < 3; ++k) {
            const double d = x - c[k];
            s += h[k] * std::exp(-d * d / (2.0 * w[k] * w[k]));
        }
        return s;
    };
    auto gradient = [=](double x) {
        double s = 0.0;
        for (int k = 0; k < 3; ++k) {
            const double d = x - c[k];
            s += h[k] * std::exp(-d * d / (2.0 * w[k] * w[k])) * (-d / (w[k] * w[k]));
        }
        return s;
    };
    return {"f2", value, gradient, 0.0, 1.0};
}

/// Smooth multimodal: sin(2 pi x) + 0.3 sin(6 pi x).
inline TestFunction make_f3() {
    using std::numbers::pi;
    return {"f3",
            [](double x) { return std::sin(2.0 * pi * x) + 0.3 * std::sin(6.0 * pi * x); },
            [](double x) {
                return 2.0 * pi * std::cos(2.0 * pi * x) + 1.8 * pi * std::cos(6.0 * pi * x);
            },
            0.0, 1.0};
}

/// Loads a custom function from a whitespace- or comma-separated table of
/// rows "x f g"; both maps are piecewise-linear interpolations.
inline TestFunction load_function_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open function table: " + path);
    std::vector<double> xs, fs, gs;
    std::string line;
    while (std::getline(in, line)) {
        for (char& ch : line)
            if (ch == ',') ch = ' ';
        std::istringstream row(line);
        double x, f, g;
        if (row >> x >> f >> g) {
            if (!xs.empty() && x <= xs.back())
                throw std::runtime_error("function table: x must be strictly increasing");
            xs.push_back(x);
            fs.push_back(f);
            gs.push_back(g);
        }
    }
    if (xs.size() < 2) throw std::runtime_error("function table needs at least 2 rows: " + path);
    auto interp = [xs](std::vector<double> ys) {
        return [xs, ys = std::move(ys)](double x) {
            if (x <= xs.front()) return ys.front();
            if (x >= xs.back()) return ys.back();
            std::size_t hi = 1;
            while (xs[hi] < x) ++hi;
            const double t = (x - xs[hi - 1]) / (xs[hi] - xs[hi - 1]);
            return ys[hi - 1] + t * (ys[hi] - ys[hi - 1]);
        };
    };
    return {path, interp(fs), interp(gs), xs.front(), xs.back()};
}

inline TestFunction make_function(const std::string& name) {
    if (name == "f1") return make_f1();
    if (name == "f2") return make_f2();
    if (name == "f3") return make_f3();
    return load_function_table(name);
}

/// Noisy oracle over a grid. Noise is keyed by (node, pull index) so the
/// k-th pull of a node sees the same realization no matter which policy asks
/// or in what order (common random numbers across policies of one
/// replication); each policy still experiences i.i.d. Gaussian noise.
class Environment {
  public:
    Environment(TestFunction fn, Grid grid, double value_noise_sd, double grad_noise_sd,
                std::uint64_t seed, std::uint64_t replication = 0)
        : fn_(std::move(fn)),
          grid_(std::move(grid)),
          value_sd_(value_noise_sd),
          grad_sd_(grad_noise_sd),
          value_noise_(seed, replication, 0),
          grad_noise_(seed, replication, 2),
          value_pulls_(grid_.resolution(), 0),
          grad_pulls_(grid_.resolution(), 0) {
        if (value_sd_ < 0.0 || grad_sd_ < 0.0)
            throw std::invalid_argument("environment: noise SDs must be >= 0");
        if (grid_.lo() < fn_.lo || grid_.hi() > fn_.hi)
            throw std::invalid_argument("environment: grid outside function domain");
        best_node_ = 0;
        for (std::size_t i = 1; i < grid_.resolution(); ++i)
            if (fn_.value(grid_.points[i]) > fn_.value(grid_.points[best_node_])) best_node_ = i;
        best_value_ = fn_.value(grid_.points[best_node_]);
    }

    const TestFunction& function() const { return fn_; }
    const Grid& grid() const { return grid_; }
    double value_noise_sd() const { return value_sd_; }
    double grad_noise_sd() const { return grad_sd_; }

    double true_value(std::size_t node) const { return fn_.value(grid_.points[node]); }
    double true_gradient(std::size_t node) const { return fn_.gradient(grid_.points[node]); }

    double observe_value(std::size_t node) {
        check_node(node);
        return fn_.value(grid_.points[node]) + value_sd_ * value_noise_(node, value_pulls_[node]++);
    }

    double observe_gradient(std::size_t node) {
        check_node(node);
        return fn_.gradient(grid_.points[node]) + grad_sd_ * grad_noise_(node, grad_pulls_[node]++);
    }

    /// Continuous-position gradient query used by the gradient-ascent
    /// baseline, whose iterate is not confined to grid nodes.
    double observe_gradient_at(double x) {
        return fn_.gradient(x) + grad_sd_ * grad_noise_(kContinuousKey, continuous_pulls_++);
    }

    /// Best grid node by true value; ties resolve to the lowest index.
    std::pair<std::size_t, double> grid_optimum() const { return {best_node_, best_value_}; }

    double instantaneous_regret(std::size_t node) const {
        check_node(node);
        return best_value_ - fn_.value(grid_.points[node]);
    }

    /// Regret of a continuous position against the continuous optimum
    /// (located by scan once per environment).
    double continuous_regret(double x) {
        if (!have_cont_best_) {
            const int kScan = 100000;
            double best = fn_.value(fn_.lo);
            for (int i = 1; i <= kScan; ++i) {
                const double xi = fn_.lo + (fn_.hi - fn_.lo) * static_cast<double>(i) / kScan;
                best = std::max(best, fn_.value(xi));
            }
            cont_best_ = best;
            have_cont_best_ = true;
        }
        return cont_best_ - fn_.value(x);
    }

  private:
    void check_node(std::size_t node) const {
        if (node >= grid_.resolution()) throw std::out_of_range("environment: node outside grid");
    }

    static constexpr std::uint64_t kContinuousKey = ~0ull;

    TestFunction fn_;
    Grid grid_;
    double value_sd_;
    double grad_sd_;
    KeyedNormal value_noise_;
    KeyedNormal grad_noise_;
    std::vector<std::uint64_t> value_pulls_;
    std::vector<std::uint64_t> grad_pulls_;
    std::uint64_t continuous_pulls_ = 0;
    std::size_t best_node_ = 0;
    double best_value_ = 0.0;
    bool have_cont_best_ = false;
    double cont_best_ = 0.0;
};

}  // namespace bugb
