#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "sdqm/ade_semidiscrete.hpp"
#include "sdqm/grid.hpp"

namespace sdqm {

// The two benchmark transport problems, each with a closed-form solution.
//
// pure_advection: a Gaussian pulse of height `amplitude` and standard
// deviation `rho` advecting at speed nu with no dispersion,
//
//     u(x, t) = amplitude * exp(-(x - x_tilde - nu t)^2 / (2 rho^2)).
//
// advection_dispersion: an initially sharp Gaussian advecting at speed nu
// while fading by dispersion lambda,
//
//     u(x, t) = 1/sqrt(4 t + 1) * exp(-(x - x_tilde - nu t)^2 / (lambda (4 t + 1))).
enum class ProblemKind { pure_advection, advection_dispersion };

inline const char* problem_name(ProblemKind kind)
{
    return kind == ProblemKind::pure_advection ? "pure_advection"
                                               : "advection_dispersion";
}

struct ProblemSpec {
    ProblemKind kind = ProblemKind::pure_advection;
    double a = 0.0; // domain [a, b]
    double b = 1.0;
    double t_end = 1.0;
    AdeParameters params;
    double x_tilde = 0.0;   // initial pulse center
    double rho = 1.0;       // pulse standard deviation (pure_advection only)
    double amplitude = 1.0; // pulse height (pure_advection only)

    static ProblemSpec pure_advection()
    {
        ProblemSpec p;
        p.kind = ProblemKind::pure_advection;
        p.a = 0.0;
        p.b = 9000.0;
        p.t_end = 9600.0;
        p.params = {0.5, 0.0};
        p.x_tilde = 2000.0;
        p.rho = 264.0;
        p.amplitude = 10.0;
        return p;
    }

    static ProblemSpec advection_dispersion()
    {
        ProblemSpec p;
        p.kind = ProblemKind::advection_dispersion;
        p.a = 0.0;
        p.b = 9.0;
        p.t_end = 5.0;
        p.params = {0.8, 0.005};
        p.x_tilde = 1.0;
        p.rho = 0.0;
        p.amplitude = 1.0;
        return p;
    }
};

inline double exact_solution(const ProblemSpec& p, double x, double t)
{
    const double shift = x - p.x_tilde - p.params.nu * t;
    if (p.kind == ProblemKind::pure_advection)
        return p.amplitude * std::exp(-shift * shift / (2.0 * p.rho * p.rho));
    const double spread = 4.0 * t + 1.0;
    return std::exp(-shift * shift / (p.params.lambda * spread)) /
           std::sqrt(spread);
}

// Exact solution sampled at every node at t = 0. The grid must span the
// problem domain exactly.
inline std::vector<double> initial_condition(const ProblemSpec& p,
                                             const GridSpec& grid)
{
    const double span = p.b - p.a;
    if (std::abs(grid.a - p.a) > 1e-9 * span ||
        std::abs(grid.node(grid.n_nodes) - p.b) > 1e-9 * span)
        throw std::invalid_argument(
            "initial_condition: grid does not span the problem domain");
    std::vector<double> u(grid.n_nodes);
    for (int m = 1; m <= grid.n_nodes; ++m)
        u[m - 1] = exact_solution(p, grid.node(m), 0.0);
    return u;
}

// Dirichlet data: the exact solution traced along the domain endpoints.
inline BoundarySpec boundary_values(const ProblemSpec& p)
{
    return BoundarySpec{
        [p](double t) { return exact_solution(p, p.a, t); },
        [p](double t) { return exact_solution(p, p.b, t); },
    };
}

} // namespace sdqm
