#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace bugb {

/// Discretisation of the input domain. Nodes are strictly increasing; the
/// model lives on these points and continuous queries are snapped to them.
struct Grid {
    std::vector<double> points;

    std::size_t resolution() const { return points.size(); }

    double spacing(std::size_t i) const { return points[i] - points[i - 1]; }

    double lo() const { return points.front(); }
    double hi() const { return points.back(); }
};

/// `resolution` equally spaced points with x_0 = lo and x_{N} = hi.
inline Grid build_uniform_grid(double lo, double hi, std::size_t resolution) {
    if (!(lo < hi))
        throw std::invalid_argument("grid: hi must exceed lo");
    if (resolution < 2)
        throw std::invalid_argument("grid: resolution must be at least 2");
    Grid g;
    g.points.resize(resolution);
    const double span = hi - lo;
    for (std::size_t i = 0; i < resolution; ++i) {
        const double t = static_cast<double>(i) / static_cast<double>(resolution - 1);
        g.points[i] = lo + span * t;
    }
    g.points.front() = lo;
    g.points.back() = hi;
    return g;
}

/// Index of the nearest grid point. Exact midpoints resolve to the lower
/// index; out-of-domain values clamp to the nearest endpoint.
inline std::size_t snap_to_grid(const Grid& g, double x) {
    if (!std::isfinite(x))
        throw std::domain_error("snap_to_grid: non-finite input");
    if (x <= g.points.front()) return 0;
    if (x >= g.points.back()) return g.points.size() - 1;
    auto it = std::lower_bound(g.points.begin(), g.points.end(), x);
    std::size_t hi = static_cast<std::size_t>(it - g.points.begin());
    std::size_t lo = hi - 1;
    const double dlo = x - g.points[lo];
    const double dhi = g.points[hi] - x;
    return dlo <= dhi ? lo : hi;
}

/// Deterministic skeleton of the chain link: f(x_i) ≈ f(x_{i-1}) + f'(x_{i-1})·dx.
inline double linear_recursion_value(double f_prev, double grad_prev, double dx) {
    return f_prev + grad_prev * dx;
}

}  // namespace bugb
