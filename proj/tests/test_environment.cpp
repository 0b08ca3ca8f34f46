#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>

#include "bugb/environment.hpp"
#include "bugb/optimizer.hpp"

using namespace bugb;

namespace {

double central_fd(const TestFunction& fn, double x, double h = 1e-5) {
    return (fn.value(x + h) - fn.value(x - h)) / (2.0 * h);
}

// Root of f2' inside the bracket around its global peak.
double f2_peak() {
    const TestFunction f2 = make_f2();
    double lo = 0.65, hi = 0.66;
    for (int i = 0; i < 60; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (f2.gradient(mid) > 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("analytic gradients agree with central differences") {
    std::mt19937_64 eng(2);
    std::uniform_real_distribution<double> u(0.01, 0.99);
    for (const TestFunction& fn : {make_f1(), make_f2(), make_f3()}) {
        double worst = 0.0;
        for (int i = 0; i < 1000; ++i) {
            const double x = u(eng);
            worst = std::max(worst, std::abs(fn.gradient(x) - central_fd(fn, x)));
        }
        INFO(fn.id);
        CHECK(worst <= 1e-6);
    }
}

TEST_CASE("function families have the advertised shape") {
    const TestFunction f1 = make_f1();
    CHECK(f1.value(0.8) == 1.0);
    CHECK(f1.gradient(0.8) == 0.0);
    CHECK(f1.value(0.0) == Catch::Approx(1.0 - 2.5 * 0.64).margin(1e-15));

    const TestFunction f3 = make_f3();
    CHECK(f3.value(0.0) == Catch::Approx(0.0).margin(1e-12));
    CHECK(f3.value(0.5) == Catch::Approx(0.0).margin(1e-12));
}

TEST_CASE("grid argmax per function") {
    const Grid g = build_uniform_grid(0.0, 1.0, 100);
    CHECK(Environment(make_f1(), g, 0, 0, 1).grid_optimum().first == 79);
    CHECK(Environment(make_f2(), g, 0, 0, 1).grid_optimum().first == 64);

    TestFunction flat{"flat", [](double) { return 2.0; }, [](double) { return 0.0; }, 0.0, 1.0};
    const auto [node, value] = Environment(flat, g, 0, 0, 1).grid_optimum();
    CHECK(node == 0);  // ties resolve low
    CHECK(value == 2.0);
}

TEST_CASE("grid argmax converges under refinement") {
    for (std::size_t res : {11, 21, 41, 81, 161}) {
        const Grid g = build_uniform_grid(0.0, 1.0, res);
        Environment env(make_f1(), g, 0, 0, 1);
        const double x = g.points[env.grid_optimum().first];
        CHECK(std::abs(x - 0.8) <= g.spacing(1) + 1e-12);
    }
}

TEST_CASE("zero-noise gradient vanishes at the interior peak") {
    const double xstar = f2_peak();
    Grid g;
    g.points = {0.6, xstar, 0.7};
    Environment env(make_f2(), g, 0.0, 0.0, 1);
    CHECK(std::abs(env.observe_gradient(1)) <= 1e-9);
    CHECK(env.grid_optimum().first == 1);
}

TEST_CASE("noiseless observations are exact and repeatable") {
    const Grid g = build_uniform_grid(0.0, 1.0, 50);
    Environment env(make_f3(), g, 0.0, 0.0, 9);
    for (std::size_t node : {0, 17, 49}) {
        const double v = env.observe_value(node);
        CHECK(v == env.true_value(node));
        CHECK(env.observe_value(node) == v);
    }
}

TEST_CASE("observation noise is unbiased with the configured scale") {
    const Grid g = build_uniform_grid(0.0, 1.0, 10);
    Environment env(make_f1(), g, 1.0, 0.0, 31);
    constexpr std::size_t kDraws = 100000;
    double sum = 0.0, sum2 = 0.0;
    for (std::size_t i = 0; i < kDraws; ++i) {
        const double d = env.observe_value(4) - env.true_value(4);
        sum += d;
        sum2 += d * d;
    }
    const double mean = sum / kDraws;
    const double var = sum2 / kDraws - mean * mean;
    CHECK(std::abs(mean) < 4.5 / std::sqrt(static_cast<double>(kDraws)));
    CHECK(std::abs(var - 1.0) < 0.03);
}

TEST_CASE("identical seeds replay identical noise sequences") {
    const Grid g = build_uniform_grid(0.0, 1.0, 20);
    Environment a(make_f2(), g, 0.7, 0.3, 77, 5);
    Environment b(make_f2(), g, 0.7, 0.3, 77, 5);
    for (int i = 0; i < 25; ++i) {
        const std::size_t node = static_cast<std::size_t>((i * 7) % 20);
        CHECK(a.observe_value(node) == b.observe_value(node));
        CHECK(a.observe_gradient(node) == b.observe_gradient(node));
    }
}

TEST_CASE("noise draws are keyed by node and pull, not visit order") {
    const Grid g = build_uniform_grid(0.0, 1.0, 20);
    Environment a(make_f1(), g, 1.0, 0.0, 13, 2);
    Environment b(make_f1(), g, 1.0, 0.0, 13, 2);
    const double a0 = a.observe_value(3);
    const double a1 = a.observe_value(3);
    b.observe_value(5);  // interleaved pull of a different node
    b.observe_value(11);
    CHECK(b.observe_value(3) == a0);
    CHECK(b.observe_value(3) == a1);
}

TEST_CASE("different replications decorrelate the noise") {
    const Grid g = build_uniform_grid(0.0, 1.0, 5);
    Environment a(make_f1(), g, 1.0, 0.0, 13, 0);
    Environment b(make_f1(), g, 1.0, 0.0, 13, 1);
    CHECK(a.observe_value(2) != b.observe_value(2));
}

TEST_CASE("gradient observations share scale and unbiasedness") {
    const Grid g = build_uniform_grid(0.0, 1.0, 10);
    Environment env(make_f3(), g, 0.0, 2.0, 47);
    constexpr std::size_t kDraws = 50000;
    double sum = 0.0;
    for (std::size_t i = 0; i < kDraws; ++i) sum += env.observe_gradient(6) - env.true_gradient(6);
    CHECK(std::abs(sum / kDraws) < 4.5 * 2.0 / std::sqrt(static_cast<double>(kDraws)));
}

TEST_CASE("continuous gradient queries follow the function off-grid") {
    const Grid g = build_uniform_grid(0.0, 1.0, 5);
    Environment env(make_f1(), g, 0.0, 0.0, 3);
    CHECK(env.observe_gradient_at(0.33) == make_f1().gradient(0.33));
}

TEST_CASE("regret is zero at the optimum and positive elsewhere") {
    const Grid g = build_uniform_grid(0.0, 1.0, 100);
    Environment env(make_f1(), g, 0, 0, 1);
    const std::size_t best = env.grid_optimum().first;
    CHECK(env.instantaneous_regret(best) == 0.0);
    CHECK(env.instantaneous_regret(0) > 0.0);
    CHECK(env.continuous_regret(0.8) == Catch::Approx(0.0).margin(1e-12));
    CHECK(env.continuous_regret(0.5) == Catch::Approx(0.225).margin(1e-9));
}

TEST_CASE("cumulative regret is the summed reward gap") {
    TestFunction steps{"steps",
                       [](double x) { return x < 0.25 ? 1.0 : (x < 0.75 ? 0.5 : 0.8); },
                       [](double) { return 0.0; },
                       0.0,
                       1.0};
    Grid g;
    g.points = {0.0, 0.5, 1.0};
    Environment env(steps, g, 0, 0, 1);
    RegretRecord rec;
    for (std::size_t node : {0, 1, 2}) rec.push(node, env.instantaneous_regret(node));
    CHECK(rec.cumulative.back() == Catch::Approx(0.7).margin(1e-12));
}

TEST_CASE("environment construction guards") {
    const Grid g = build_uniform_grid(0.0, 1.0, 5);
    CHECK_THROWS_AS(Environment(make_f1(), g, -0.1, 0.0, 1), std::invalid_argument);
    const Grid wide = build_uniform_grid(-0.1, 1.0, 5);
    CHECK_THROWS_AS(Environment(make_f1(), wide, 0.0, 0.0, 1), std::invalid_argument);
}

TEST_CASE("function tables load and interpolate") {
    const std::string path = "bugb_test_table.csv";
    {
        std::ofstream out(path);
        out << "0.0, 0.0, 1.0\n";
        out << "0.5, 0.5, 1.0\n";
        out << "1.0, 0.0, -1.0\n";
    }
    const TestFunction fn = make_function(path);
    CHECK(fn.lo == 0.0);
    CHECK(fn.hi == 1.0);
    CHECK(fn.value(0.25) == Catch::Approx(0.25).margin(1e-12));
    CHECK(fn.value(0.75) == Catch::Approx(0.25).margin(1e-12));
    CHECK(fn.gradient(0.25) == Catch::Approx(1.0).margin(1e-12));
    CHECK(fn.gradient(0.75) == Catch::Approx(0.0).margin(1e-12));
    CHECK(fn.value(-1.0) == 0.0);  // clamped to the table range
    std::remove(path.c_str());
}

TEST_CASE("function table rejects bad input") {
    const std::string path = "bugb_bad_table.csv";
    {
        std::ofstream out(path);
        out << "0.0 0.0 1.0\n";
        out << "0.0 0.5 1.0\n";
    }
    CHECK_THROWS_AS(load_function_table(path), std::runtime_error);
    std::remove(path.c_str());
    CHECK_THROWS_AS(load_function_table("no_such_file_anywhere.csv"), std::runtime_error);
}

TEST_CASE("named functions dispatch by id") {
    CHECK(make_function("f1").id == "f1");
    CHECK(make_function("f2").id == "f2");
    CHECK(make_function("f3").id == "f3");
}
