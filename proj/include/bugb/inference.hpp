#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "bugb/grid.hpp"
#include "bugb/model.hpp"
#include "bugb/rng.hpp"

namespace bugb {

/// Gaussian belief over one node state (F_i, grad F_i).
struct NodeGaussian {
    double mf = 0.0;
    double mg = 0.0;
    Cov2 cov;
};

/// Moments produced by one inference pass. predicted[i] is p(s_i | obs before
/// node i) with predicted[0] the prior; filtered adds node i's observations;
/// smoothed conditions on everything.
struct PosteriorBelief {
    std::vector<NodeGaussian> predicted;
    std::vector<NodeGaussian> filtered;
    std::vector<NodeGaussian> smoothed;

    std::size_t size() const { return filtered.size(); }
};

namespace detail {

constexpr double kPinvCutoff = 1e-12;

inline void clamp_cov(Cov2& c) {
    if (c.ff < 0.0) c.ff = 0.0;
    if (c.gg < 0.0) c.gg = 0.0;
    if (c.ff == 0.0 || c.gg == 0.0) c.fg = 0.0;
}

/// Symmetric 2x2 eigendecomposition. Returns eigenvalues (descending) and the
/// first eigenvector; the second is its 90-degree rotation.
inline void sym2_eigen(const Cov2& c, std::array<double, 2>& lam,
                       std::array<double, 2>& v0) {
    const double half_tr = 0.5 * (c.ff + c.gg);
    const double half_diff = 0.5 * (c.ff - c.gg);
    const double disc = std::sqrt(half_diff * half_diff + c.fg * c.fg);
    lam[0] = half_tr + disc;
    lam[1] = half_tr - disc;
    if (disc <= 0.0 || (std::abs(c.fg) == 0.0 && half_diff >= 0.0)) {
        v0 = {1.0, 0.0};
    } else if (std::abs(c.fg) == 0.0) {
        v0 = {0.0, 1.0};
    } else {
        double vx = lam[0] - c.gg;
        double vy = c.fg;
        const double n = std::sqrt(vx * vx + vy * vy);
        v0 = {vx / n, vy / n};
    }
}

/// Pseudo-inverse of a symmetric PSD 2x2 with relative eigenvalue cutoff.
struct Mat2 {
    double a00 = 0.0, a01 = 0.0, a10 = 0.0, a11 = 0.0;
};

inline Mat2 sym2_pinv(const Cov2& c) {
    std::array<double, 2> lam, v0;
    sym2_eigen(c, lam, v0);
    const std::array<double, 2> v1{-v0[1], v0[0]};
    const double cutoff = std::max(lam[0] * kPinvCutoff, 1e-300);
    Mat2 r;
    for (int k = 0; k < 2; ++k) {
        if (lam[k] <= cutoff) continue;
        const auto& v = (k == 0) ? v0 : v1;
        const double w = 1.0 / lam[k];
        r.a00 += w * v[0] * v[0];
        r.a01 += w * v[0] * v[1];
        r.a10 += w * v[1] * v[0];
        r.a11 += w * v[1] * v[1];
    }
    return r;
}

/// PSD square root (eigenvalue form); negative eigenvalues clamp to zero.
inline Mat2 sym2_sqrt(const Cov2& c) {
    std::array<double, 2> lam, v0;
    sym2_eigen(c, lam, v0);
    const std::array<double, 2> v1{-v0[1], v0[0]};
    Mat2 r;
    for (int k = 0; k < 2; ++k) {
        const double l = std::max(lam[k], 0.0);
        if (l == 0.0) continue;
        const auto& v = (k == 0) ? v0 : v1;
        const double w = std::sqrt(l);
        r.a00 += w * v[0] * v[0];
        r.a01 += w * v[0] * v[1];
        r.a10 += w * v[1] * v[0];
        r.a11 += w * v[1] * v[1];
    }
    return r;
}

/// Smoother gain G = P_f A^T pinv(P_pred) for A = [[1, dx], [0, 1]].
inline Mat2 smoother_gain(const Cov2& pf, double dx, const Cov2& ppred) {
    // M = P_f A^T
    const double m00 = pf.ff + pf.fg * dx;
    const double m01 = pf.fg;
    const double m10 = pf.fg + pf.gg * dx;
    const double m11 = pf.gg;
    const Mat2 inv = sym2_pinv(ppred);
    Mat2 g;
    g.a00 = m00 * inv.a00 + m01 * inv.a10;
    g.a01 = m00 * inv.a01 + m01 * inv.a11;
    g.a10 = m10 * inv.a00 + m11 * inv.a10;
    g.a11 = m10 * inv.a01 + m11 * inv.a11;
    return g;
}

/// G C G^T for symmetric C.
inline Cov2 congruence(const Mat2& g, const Cov2& c) {
    const double t00 = g.a00 * c.ff + g.a01 * c.fg;
    const double t01 = g.a00 * c.fg + g.a01 * c.gg;
    const double t10 = g.a10 * c.ff + g.a11 * c.fg;
    const double t11 = g.a10 * c.fg + g.a11 * c.gg;
    Cov2 r;
    r.ff = t00 * g.a00 + t01 * g.a01;
    r.fg = 0.5 * ((t00 * g.a10 + t01 * g.a11) + (t10 * g.a00 + t11 * g.a01));
    r.gg = t10 * g.a10 + t11 * g.a11;
    return r;
}

}  // namespace detail

/// Scalar measurement update of one node state. With noise_var = 0 the
/// observed component is pinned exactly.
inline NodeGaussian incorporate_observation(const NodeGaussian& belief,
                                            const Observation& obs) {
    if (obs.noise_var < 0.0)
        throw std::invalid_argument("observation: negative noise variance");
    const bool on_value = obs.kind == ObsKind::value;
    const double prior_var = on_value ? belief.cov.ff : belief.cov.gg;
    const double s = prior_var + obs.noise_var;
    if (!(s > 1e-300)) return belief;  // component already pinned
    const double ph_f = on_value ? belief.cov.ff : belief.cov.fg;
    const double ph_g = on_value ? belief.cov.fg : belief.cov.gg;
    const double kf = ph_f / s;
    const double kg = ph_g / s;
    const double resid = obs.measurement - (on_value ? belief.mf : belief.mg);
    NodeGaussian out;
    out.mf = belief.mf + kf * resid;
    out.mg = belief.mg + kg * resid;
    out.cov.ff = belief.cov.ff - kf * ph_f;
    out.cov.fg = belief.cov.fg - kf * ph_g;
    out.cov.gg = belief.cov.gg - kg * ph_g;
    detail::clamp_cov(out.cov);
    return out;
}

namespace detail {

inline NodeGaussian propagate(const NodeGaussian& b, double dx, double q_f, double q_g) {
    NodeGaussian out;
    out.mf = b.mf + b.mg * dx;
    out.mg = b.mg;
    out.cov.ff = b.cov.ff + 2.0 * dx * b.cov.fg + dx * dx * b.cov.gg + q_f;
    out.cov.fg = b.cov.fg + dx * b.cov.gg;
    out.cov.gg = b.cov.gg + q_g;
    return out;
}

}  // namespace detail

/// Forward Kalman pass writing into an existing belief; vector capacity is
/// reused, so repeated calls on the same belief do not reallocate. Observations
/// may target any node, several per node; they are applied in ascending node
/// order, input order within a node.
inline void forward_filter_into(const Grid& g, const ChainHyperparams& h,
                                const std::vector<Observation>& obs,
                                PosteriorBelief& out) {
    h.validate();
    const std::size_t n = g.resolution();
    for (const auto& o : obs)
        if (o.node >= n) throw std::out_of_range("observation node outside grid");

    // Visit observations in ascending node order, keeping input order within a
    // node (stable sort of the indices).
    std::vector<std::size_t> order(obs.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&obs](std::size_t a, std::size_t b) { return obs[a].node < obs[b].node; });

    out.predicted.resize(n);
    out.filtered.resize(n);
    out.smoothed.clear();
    NodeGaussian cur;
    cur.mf = h.prior_mean_f;
    cur.mg = h.prior_mean_g;
    cur.cov = h.prior_cov;
    std::size_t next = 0;
    for (std::size_t i = 0; i < n; ++i) {
        out.predicted[i] = cur;
        for (; next < order.size() && obs[order[next]].node == i; ++next)
            cur = incorporate_observation(cur, obs[order[next]]);
        out.filtered[i] = cur;
        if (i + 1 < n) cur = detail::propagate(cur, g.spacing(i + 1), h.sigma_f_sq, h.sigma_g_sq);
    }
}

/// Forward Kalman pass returning a fresh belief.
inline PosteriorBelief forward_filter(const Grid& g, const ChainHyperparams& h,
                                      const std::vector<Observation>& obs) {
    PosteriorBelief b;
    forward_filter_into(g, h, obs, b);
    return b;
}

/// RTS backward pass; fills belief.smoothed. The node-N smoothed marginal
/// equals the filtered one by construction.
inline void backward_smooth(PosteriorBelief& belief, const TransitionModel& tm) {
    const std::size_t n = belief.filtered.size();
    if (n == 0) throw std::invalid_argument("backward_smooth: empty belief");
    if (tm.dx.size() + 1 != n)
        throw std::invalid_argument("backward_smooth: transition model size mismatch");
    belief.smoothed.resize(n);
    belief.smoothed[n - 1] = belief.filtered[n - 1];
    for (std::size_t idx = n - 1; idx-- > 0;) {
        const NodeGaussian& f = belief.filtered[idx];
        const NodeGaussian& pred = belief.predicted[idx + 1];
        const NodeGaussian& next = belief.smoothed[idx + 1];
        const detail::Mat2 gain = detail::smoother_gain(f.cov, tm.dx[idx], pred.cov);
        NodeGaussian s;
        const double df = next.mf - pred.mf;
        const double dg = next.mg - pred.mg;
        s.mf = f.mf + gain.a00 * df + gain.a01 * dg;
        s.mg = f.mg + gain.a10 * df + gain.a11 * dg;
        Cov2 delta;
        delta.ff = next.cov.ff - pred.cov.ff;
        delta.fg = next.cov.fg - pred.cov.fg;
        delta.gg = next.cov.gg - pred.cov.gg;
        const Cov2 corr = detail::congruence(gain, delta);
        s.cov.ff = f.cov.ff + corr.ff;
        s.cov.fg = f.cov.fg + corr.fg;
        s.cov.gg = f.cov.gg + corr.gg;
        detail::clamp_cov(s.cov);
        belief.smoothed[idx] = s;
    }
}

/// Filter + smooth in one call.
inline PosteriorBelief smooth(const Grid& g, const ChainHyperparams& h,
                              const std::vector<Observation>& obs) {
    PosteriorBelief b = forward_filter(g, h, obs);
    backward_smooth(b, TransitionModel(g, h));
    return b;
}

/// One exact joint posterior draw of all node states (backward sampling).
/// Consumes exactly two normals per node in back-to-front node order.
inline std::vector<NodeGaussian> sample_trajectory(const PosteriorBelief& belief,
                                                   const TransitionModel& tm,
                                                   GaussianSampler& rng) {
    const std::size_t n = belief.filtered.size();
    if (n == 0) throw std::invalid_argument("sample_trajectory: empty belief");
    std::vector<NodeGaussian> out(n);
    auto draw = [&rng](double mf, double mg, const Cov2& c) {
        const detail::Mat2 root = detail::sym2_sqrt(c);
        const double z0 = rng();
        const double z1 = rng();
        NodeGaussian s;
        s.mf = mf + root.a00 * z0 + root.a01 * z1;
        s.mg = mg + root.a10 * z0 + root.a11 * z1;
        s.cov = Cov2{};
        return s;
    };
    const NodeGaussian& last = belief.filtered[n - 1];
    out[n - 1] = draw(last.mf, last.mg, last.cov);
    for (std::size_t idx = n - 1; idx-- > 0;) {
        const NodeGaussian& f = belief.filtered[idx];
        const NodeGaussian& pred = belief.predicted[idx + 1];
        const detail::Mat2 gain = detail::smoother_gain(f.cov, tm.dx[idx], pred.cov);
        const double df = out[idx + 1].mf - pred.mf;
        const double dg = out[idx + 1].mg - pred.mg;
        const double cmf = f.mf + gain.a00 * df + gain.a01 * dg;
        const double cmg = f.mg + gain.a10 * df + gain.a11 * dg;
        Cov2 ccov = detail::congruence(gain, pred.cov);
        ccov.ff = f.cov.ff - ccov.ff;
        ccov.fg = f.cov.fg - ccov.fg;
        ccov.gg = f.cov.gg - ccov.gg;
        detail::clamp_cov(ccov);
        out[idx] = draw(cmf, cmg, ccov);
    }
    return out;
}

}  // namespace bugb
