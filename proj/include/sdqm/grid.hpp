#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace sdqm {

// Uniform grid on [a, b] with nodes x_m = a + (m - 1) * dx, m = 1..n_nodes.
// Node indices are 1-based throughout the library; containers holding nodal
// values use the usual 0-based layout with element i corresponding to node i+1.
struct GridSpec {
    double a = 0.0;
    double b = 1.0;
    int n_nodes = 2;
    double dx = 1.0;

    double node(int m) const { return a + (m - 1) * dx; }

    // Grid from endpoints and node count; dx is derived.
    static GridSpec from_bounds(double a, double b, int n_nodes)
    {
        if (!(b > a))
            throw std::invalid_argument("GridSpec: requires b > a");
        if (n_nodes < 3)
            throw std::invalid_argument("GridSpec: requires at least 3 nodes");
        return GridSpec{a, b, n_nodes, (b - a) / (n_nodes - 1)};
    }

    // Grid from endpoints and spacing; dx must divide b - a to within a
    // 1e-9 relative tolerance, otherwise the grid cannot hit both endpoints.
    static GridSpec from_spacing(double a, double b, double dx)
    {
        if (!(b > a))
            throw std::invalid_argument("GridSpec: requires b > a");
        if (!(dx > 0.0))
            throw std::invalid_argument("GridSpec: requires dx > 0");
        const double intervals = (b - a) / dx;
        const double rounded = std::round(intervals);
        if (rounded < 2.0 || std::abs(intervals - rounded) > 1e-9 * intervals)
            throw std::invalid_argument(
                "GridSpec: dx = " + std::to_string(dx) +
                " does not evenly divide [" + std::to_string(a) + ", " +
                std::to_string(b) + "]");
        return GridSpec{a, b, static_cast<int>(rounded) + 1, dx};
    }
};

} // namespace sdqm
