#pragma once

#include <cmath>
#include <numbers>
#include <span>
#include <stdexcept>

#include "sdqm/grid.hpp"

namespace sdqm {

// Cardinal sinc basis attached to a uniform grid.
//
// The basis function centered at node m is
//
//     S_m(x) = sin(theta) / theta,   theta = pi * (x - x_m) / dx,
//
// with S_m(x_m) = 1 and S_m(x_i) = 0 at every other node. Derivatives are
// evaluated from the closed forms
//
//     S_m'(x)  = (pi/dx)   * (theta*cos(theta) - sin(theta)) / theta^2
//     S_m''(x) = (pi/dx)^2 * (-sin(theta)/theta - 2*cos(theta)/theta^2
//                             + 2*sin(theta)/theta^3)
//
// whose limits at the nodes are finite. Evaluation points closer than
// 1e-9 * dx to a node are snapped onto it and served by the exact nodal
// values, so interpolation and differentiation at nodes are free of the
// catastrophic cancellation the ratio forms would suffer there.

namespace detail {

// Guard radius (in units of dx) for snapping x onto the nearest node.
inline constexpr double node_snap_guard = 1e-9;

inline double sign_pow(long long j) { return (j % 2 == 0) ? 1.0 : -1.0; }

} // namespace detail

inline double sinc_eval(double x, int m, const GridSpec& grid)
{
    if (m < 1 || m > grid.n_nodes)
        throw std::invalid_argument("sinc_eval: node index out of range");
    const double s = (x - grid.node(m)) / grid.dx;
    const double snapped = std::round(s);
    if (std::abs(s - snapped) < detail::node_snap_guard)
        return snapped == 0.0 ? 1.0 : 0.0;
    const double theta = std::numbers::pi * s;
    return std::sin(theta) / theta;
}

inline double sinc_derivative(double x, int m, const GridSpec& grid, int order)
{
    if (m < 1 || m > grid.n_nodes)
        throw std::invalid_argument("sinc_derivative: node index out of range");
    if (order != 1 && order != 2)
        throw std::invalid_argument("sinc_derivative: order must be 1 or 2");

    const double s = (x - grid.node(m)) / grid.dx;
    const double snapped = std::round(s);
    const double pi = std::numbers::pi;

    if (std::abs(s - snapped) < detail::node_snap_guard) {
        const long long j = static_cast<long long>(snapped);
        if (order == 1)
            return j == 0 ? 0.0 : detail::sign_pow(j) / (grid.dx * j);
        if (j == 0)
            return -pi * pi / (3.0 * grid.dx * grid.dx);
        return 2.0 * detail::sign_pow(j + 1) / (grid.dx * grid.dx * j * j);
    }

    const double theta = pi * s;
    const double st = std::sin(theta);
    const double ct = std::cos(theta);
    if (order == 1)
        return (pi / grid.dx) * (theta * ct - st) / (theta * theta);
    const double scale = (pi / grid.dx) * (pi / grid.dx);
    return scale *
           (-st / theta - 2.0 * ct / (theta * theta) +
            2.0 * st / (theta * theta * theta));
}

// Truncated cardinal expansion sum_m samples[m-1] * S_m(x).
inline double cardinal_interpolate(std::span<const double> samples, double x,
                                   const GridSpec& grid)
{
    if (static_cast<int>(samples.size()) != grid.n_nodes)
        throw std::invalid_argument(
            "cardinal_interpolate: sample count must equal n_nodes");
    double acc = 0.0;
    for (int m = 1; m <= grid.n_nodes; ++m)
        acc += samples[m - 1] * sinc_eval(x, m, grid);
    return acc;
}

} // namespace sdqm
