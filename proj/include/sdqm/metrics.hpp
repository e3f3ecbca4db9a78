#pragma once

#include <cmath>
#include <span>
#include <stdexcept>

#include "sdqm/grid.hpp"

namespace sdqm {

// One sample of the error history: the discrete maximum-norm error over the
// interior nodes (2..N-1) at time t, with the 1-based node where the maximum
// is attained (smallest index on ties). Endpoint nodes follow the imposed
// Dirichlet data and are excluded.
struct ErrorSample {
    double t = 0.0;
    double linf = 0.0;
    int argmax_node = 0;
};

inline ErrorSample linf_error(std::span<const double> numeric,
                              std::span<const double> exact,
                              const GridSpec& grid, double t = 0.0)
{
    if (static_cast<int>(numeric.size()) != grid.n_nodes ||
        static_cast<int>(exact.size()) != grid.n_nodes)
        throw std::invalid_argument(
            "linf_error: profiles must hold one value per node");
    ErrorSample sample{t, 0.0, 2};
    for (int m = 2; m <= grid.n_nodes - 1; ++m) {
        const double err = std::abs(numeric[m - 1] - exact[m - 1]);
        if (err > sample.linf) {
            sample.linf = err;
            sample.argmax_node = m;
        }
    }
    return sample;
}

} // namespace sdqm
