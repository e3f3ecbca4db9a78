#pragma once

#include <functional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "sdqm/dqm_weights.hpp"
#include "sdqm/grid.hpp"

namespace sdqm {

// Advection-dispersion equation  u_t = -nu * u_x + lambda * u_xx.
struct AdeParameters {
    double nu = 0.0;     // advection speed
    double lambda = 0.0; // dispersion coefficient, >= 0
};

// Time-dependent Dirichlet data at the two endpoints.
struct BoundarySpec {
    std::function<double(double)> left;
    std::function<double(double)> right;
};

// Method-of-lines system over the interior nodes 2..N-1. Collocating the
// ADE with differential quadrature weights and eliminating the Dirichlet
// endpoints yields
//
//     du_m/dt = sum_i A[m][i] * u_i  +  gL[m] * left(t)  +  gR[m] * right(t)
//
// where A[m][i] = -nu * w1[m][i] + lambda * w2[m][i] restricted to interior
// rows/columns, and gL, gR collect the same coefficients at the eliminated
// endpoint columns.
class SemiDiscreteSystem {
public:
    SemiDiscreteSystem(AdeParameters params, GridSpec grid, BoundarySpec boundary)
        : params_(params), grid_(grid), boundary_(std::move(boundary))
    {
        if (params_.lambda < 0.0)
            throw std::invalid_argument("SemiDiscreteSystem: lambda must be >= 0");
        if (!boundary_.left || !boundary_.right)
            throw std::invalid_argument(
                "SemiDiscreteSystem: both boundary functions must be set");

        const WeightMatrix w1 = first_order_weights(grid_);
        const WeightMatrix w2 = second_order_weights(grid_);
        const int k = interior_size();
        a_.assign(static_cast<std::size_t>(k) * k, 0.0);
        g_left_.assign(k, 0.0);
        g_right_.assign(k, 0.0);
        for (int r = 0; r < k; ++r) {
            const int m = r + 2; // 1-based node index of interior row r
            for (int c = 0; c < k; ++c) {
                const int i = c + 2;
                a_[static_cast<std::size_t>(r) * k + c] =
                    -params_.nu * w1.at(m, i) + params_.lambda * w2.at(m, i);
            }
            g_left_[r] = -params_.nu * w1.at(m, 1) + params_.lambda * w2.at(m, 1);
            g_right_[r] = -params_.nu * w1.at(m, grid_.n_nodes) +
                          params_.lambda * w2.at(m, grid_.n_nodes);
        }
    }

    const GridSpec& grid() const { return grid_; }
    const AdeParameters& params() const { return params_; }
    int interior_size() const { return grid_.n_nodes - 2; }

    // Interior coupling matrix entry, 0-based over interior unknowns
    // (row r corresponds to node r+2).
    double a(int r, int c) const
    {
        return a_[static_cast<std::size_t>(r) * interior_size() + c];
    }
    std::span<const double> boundary_coupling_left() const { return g_left_; }
    std::span<const double> boundary_coupling_right() const { return g_right_; }

    // Time derivative of the interior state, written into dudt.
    void rhs_into(double t, std::span<const double> u,
                  std::span<double> dudt) const
    {
        const int k = interior_size();
        if (static_cast<int>(u.size()) != k || static_cast<int>(dudt.size()) != k)
            throw std::invalid_argument(
                "SemiDiscreteSystem::rhs_into: state size must equal interior size");
        const double ul = boundary_.left(t);
        const double ur = boundary_.right(t);
        for (int r = 0; r < k; ++r) {
            const double* row = a_.data() + static_cast<std::size_t>(r) * k;
            double acc = g_left_[r] * ul + g_right_[r] * ur;
            for (int c = 0; c < k; ++c)
                acc += row[c] * u[c];
            dudt[r] = acc;
        }
    }

    std::vector<double> rhs(double t, std::span<const double> u) const
    {
        std::vector<double> out(u.size());
        rhs_into(t, u, out);
        return out;
    }

    // Full N-node profile: boundary values spliced around the interior state.
    std::vector<double> full_state(double t, std::span<const double> u) const
    {
        if (static_cast<int>(u.size()) != interior_size())
            throw std::invalid_argument(
                "SemiDiscreteSystem::full_state: state size must equal interior size");
        std::vector<double> out(grid_.n_nodes);
        out.front() = boundary_.left(t);
        for (std::size_t i = 0; i < u.size(); ++i)
            out[i + 1] = u[i];
        out.back() = boundary_.right(t);
        return out;
    }

private:
    AdeParameters params_;
    GridSpec grid_;
    BoundarySpec boundary_;
    std::vector<double> a_;       // interior_size^2, row-major
    std::vector<double> g_left_;  // coupling to left boundary value
    std::vector<double> g_right_; // coupling to right boundary value
};

inline SemiDiscreteSystem assemble(const AdeParameters& params,
                                   const GridSpec& grid,
                                   const BoundarySpec& boundary)
{
    return SemiDiscreteSystem(params, grid, boundary);
}

} // namespace sdqm
