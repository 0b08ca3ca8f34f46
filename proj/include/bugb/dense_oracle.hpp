#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "bugb/grid.hpp"
#include "bugb/model.hpp"

namespace bugb {

/// Full joint Gaussian over (F_0, gradF_0, F_1, gradF_1, ...) produced by the
/// brute-force oracle. Index helpers address the interleaved layout.
struct DenseJoint {
    Eigen::VectorXd mean;
    Eigen::MatrixXd cov;

    static std::size_t f_index(std::size_t node) { return 2 * node; }
    static std::size_t g_index(std::size_t node) { return 2 * node + 1; }

    double mean_f(std::size_t node) const { return mean(f_index(node)); }
    double mean_g(std::size_t node) const { return mean(g_index(node)); }
    double var_f(std::size_t node) const { return cov(f_index(node), f_index(node)); }
    double var_g(std::size_t node) const { return cov(g_index(node), g_index(node)); }
};

/// Brute-force reference posterior: builds the explicit joint prior implied
/// by the chain recursion, then conditions on every observation by dense
/// Gaussian conditioning. Independent of the filter/smoother code paths;
/// intended for testing at small resolutions.
inline DenseJoint dense_posterior_oracle(const Grid& g, const ChainHyperparams& h,
                                         const std::vector<Observation>& obs) {
    h.validate();
    const std::size_t n = g.resolution();
    if (n > 256) throw std::invalid_argument("dense oracle: resolution guard (<= 256) exceeded");
    for (const auto& o : obs)
        if (o.node >= n) throw std::out_of_range("observation node outside grid");

    const std::size_t dim = 2 * n;
    DenseJoint joint;
    joint.mean = Eigen::VectorXd::Zero(dim);
    joint.cov = Eigen::MatrixXd::Zero(dim, dim);

    // Prior mean: pure propagation of the node-0 mean.
    joint.mean(0) = h.prior_mean_f;
    joint.mean(1) = h.prior_mean_g;
    for (std::size_t i = 1; i < n; ++i) {
        const double dx = g.spacing(i);
        joint.mean(2 * i) = joint.mean(2 * (i - 1)) + dx * joint.mean(2 * (i - 1) + 1);
        joint.mean(2 * i + 1) = joint.mean(2 * (i - 1) + 1);
    }

    // Prior covariance blocks: C[i+1, j] = A_{i+1} C[i, j] for j <= i, and
    // C[i+1, i+1] = A C[i, i] A^T + Q.
    joint.cov(0, 0) = h.prior_cov.ff;
    joint.cov(0, 1) = h.prior_cov.fg;
    joint.cov(1, 0) = h.prior_cov.fg;
    joint.cov(1, 1) = h.prior_cov.gg;
    for (std::size_t i = 1; i < n; ++i) {
        const double dx = g.spacing(i);
        Eigen::Matrix2d a;
        a << 1.0, dx, 0.0, 1.0;
        for (std::size_t j = 0; j < i; ++j) {
            const Eigen::Matrix2d block =
                a * joint.cov.block<2, 2>(2 * (i - 1), 2 * j);
            joint.cov.block<2, 2>(2 * i, 2 * j) = block;
            joint.cov.block<2, 2>(2 * j, 2 * i) = block.transpose();
        }
        Eigen::Matrix2d q = Eigen::Matrix2d::Zero();
        q(0, 0) = h.sigma_f_sq;
        q(1, 1) = h.sigma_g_sq;
        joint.cov.block<2, 2>(2 * i, 2 * i) =
            a * joint.cov.block<2, 2>(2 * (i - 1), 2 * (i - 1)) * a.transpose() + q;
    }

    // Sequential scalar conditioning; order-free up to rounding.
    for (const auto& o : obs) {
        const std::size_t j =
            (o.kind == ObsKind::value) ? DenseJoint::f_index(o.node) : DenseJoint::g_index(o.node);
        const double s = joint.cov(j, j) + o.noise_var;
        if (!(s > 1e-300)) continue;
        const Eigen::VectorXd col = joint.cov.col(j);
        const Eigen::VectorXd k = col / s;
        joint.mean += k * (o.measurement - joint.mean(j));
        joint.cov -= k * col.transpose();
        joint.cov = 0.5 * (joint.cov + joint.cov.transpose()).eval();
    }
    for (std::size_t d = 0; d < dim; ++d)
        if (joint.cov(d, d) < 0.0) joint.cov(d, d) = 0.0;
    return joint;
}

}  // namespace bugb
