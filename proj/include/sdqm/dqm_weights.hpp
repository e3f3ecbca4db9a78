#pragma once

#include <cmath>
#include <numbers>
#include <span>
#include <stdexcept>
#include <vector>

#include "sdqm/grid.hpp"

namespace sdqm {

// Differential quadrature weight matrix: row m holds the coefficients that
// map nodal samples to the derivative of the cardinal interpolant at node m,
//
//     u^(p)(x_m) ~= sum_i  w[m][i] * u(x_i).
//
// For the sinc cardinal basis on a uniform grid the entries have closed
// forms (j = m - i):
//
//     order 1:  w1[m][i] = (-1)^j / (dx * j),          w1[m][m] = 0
//     order 2:  w2[m][i] = -2 * (-1)^j / (dx^2 * j^2), w2[m][m] = -pi^2 / (3 dx^2)
//
// Indices are 1-based; storage is dense row-major.
struct WeightMatrix {
    int order = 1;
    int n_nodes = 0;
    double dx = 1.0;
    std::vector<double> w; // n_nodes * n_nodes, row-major

    double at(int m, int i) const
    {
        return w[static_cast<std::size_t>(m - 1) * n_nodes + (i - 1)];
    }
    double& at(int m, int i)
    {
        return w[static_cast<std::size_t>(m - 1) * n_nodes + (i - 1)];
    }
};

inline WeightMatrix first_order_weights(const GridSpec& grid)
{
    const int n = grid.n_nodes;
    WeightMatrix wm{1, n, grid.dx,
                    std::vector<double>(static_cast<std::size_t>(n) * n, 0.0)};
    for (int m = 1; m <= n; ++m) {
        for (int i = 1; i <= n; ++i) {
            if (i == m)
                continue; // diagonal stays 0
            const int j = m - i;
            const double sign = (j % 2 == 0) ? 1.0 : -1.0;
            wm.at(m, i) = sign / (grid.dx * j);
        }
    }
    return wm;
}

inline WeightMatrix second_order_weights(const GridSpec& grid)
{
    const int n = grid.n_nodes;
    const double dx2 = grid.dx * grid.dx;
    const double diag = -std::numbers::pi * std::numbers::pi / (3.0 * dx2);
    WeightMatrix wm{2, n, grid.dx,
                    std::vector<double>(static_cast<std::size_t>(n) * n, 0.0)};
    for (int m = 1; m <= n; ++m) {
        for (int i = 1; i <= n; ++i) {
            if (i == m) {
                wm.at(m, i) = diag;
                continue;
            }
            const int j = m - i;
            const double sign = (j % 2 == 0) ? 1.0 : -1.0;
            wm.at(m, i) = -2.0 * sign / (dx2 * static_cast<double>(j) * j);
        }
    }
    return wm;
}

// Dense matrix-vector product: derivative samples at all nodes.
inline std::vector<double> apply_weights(const WeightMatrix& wm,
                                         std::span<const double> u)
{
    if (static_cast<int>(u.size()) != wm.n_nodes)
        throw std::invalid_argument(
            "apply_weights: sample count must equal n_nodes");
    std::vector<double> out(u.size(), 0.0);
    for (int m = 0; m < wm.n_nodes; ++m) {
        const double* row = wm.w.data() + static_cast<std::size_t>(m) * wm.n_nodes;
        double acc = 0.0;
        for (int i = 0; i < wm.n_nodes; ++i)
            acc += row[i] * u[i];
        out[m] = acc;
    }
    return out;
}

} // namespace sdqm
