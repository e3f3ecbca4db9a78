#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include <sdqm/benchmark_problems.hpp>

using namespace sdqm;
using Catch::Approx;

namespace {

// Second-order central differences of the exact solution, used to check that
// it actually satisfies u_t = -nu u_x + lambda u_xx.
double pde_residual(const ProblemSpec& p, double x, double t, double h)
{
    const double ut =
        (exact_solution(p, x, t + h) - exact_solution(p, x, t - h)) / (2.0 * h);
    const double ux =
        (exact_solution(p, x + h, t) - exact_solution(p, x - h, t)) / (2.0 * h);
    const double uxx = (exact_solution(p, x + h, t) -
                        2.0 * exact_solution(p, x, t) +
                        exact_solution(p, x - h, t)) /
                       (h * h);
    return ut + p.params.nu * ux - p.params.lambda * uxx;
}

} // namespace

TEST_CASE("problem factories carry the benchmark parameters", "[problems]")
{
    const ProblemSpec pa = ProblemSpec::pure_advection();
    REQUIRE(pa.kind == ProblemKind::pure_advection);
    REQUIRE(pa.a == 0.0);
    REQUIRE(pa.b == 9000.0);
    REQUIRE(pa.t_end == 9600.0);
    REQUIRE(pa.params.nu == 0.5);
    REQUIRE(pa.params.lambda == 0.0);
    REQUIRE(pa.x_tilde == 2000.0);
    REQUIRE(pa.rho == 264.0);
    REQUIRE(pa.amplitude == 10.0);

    const ProblemSpec ad = ProblemSpec::advection_dispersion();
    REQUIRE(ad.kind == ProblemKind::advection_dispersion);
    REQUIRE(ad.a == 0.0);
    REQUIRE(ad.b == 9.0);
    REQUIRE(ad.t_end == 5.0);
    REQUIRE(ad.params.nu == 0.8);
    REQUIRE(ad.params.lambda == 0.005);
    REQUIRE(ad.x_tilde == 1.0);

    REQUIRE(std::string(problem_name(pa.kind)) == "pure_advection");
    REQUIRE(std::string(problem_name(ad.kind)) == "advection_dispersion");
}

TEST_CASE("advecting pulse: peak value, width, and translation", "[problems]")
{
    const ProblemSpec p = ProblemSpec::pure_advection();

    // at t = 0 the pulse is centered at x_tilde with height amplitude
    REQUIRE(exact_solution(p, 2000.0, 0.0) == 10.0);
    REQUIRE(exact_solution(p, 2000.0 + 264.0, 0.0) ==
            Approx(10.0 * std::exp(-0.5)).epsilon(1e-15));
    REQUIRE(exact_solution(p, 2000.0 - 264.0, 0.0) ==
            Approx(10.0 * std::exp(-0.5)).epsilon(1e-15));

    // the peak travels at speed nu without changing height
    REQUIRE(exact_solution(p, 2000.0 + 0.5 * 4000.0, 4000.0) == 10.0);
    REQUIRE(exact_solution(p, 2000.0 + 0.5 * 9600.0, 9600.0) == 10.0);

    // pure translation: u(x, t) = u(x + nu d, t + d)
    std::mt19937_64 rng(424242);
    std::uniform_real_distribution<double> xs(1000.0, 8000.0);
    std::uniform_real_distribution<double> ts(0.0, 8000.0);
    std::uniform_real_distribution<double> ds(0.0, 1600.0);
    for (int i = 0; i < 50; ++i) {
        const double x = xs(rng), t = ts(rng), d = ds(rng);
        const double here = exact_solution(p, x, t);
        const double there = exact_solution(p, x + p.params.nu * d, t + d);
        REQUIRE(there == Approx(here).epsilon(1e-12).margin(1e-300));
    }
}

TEST_CASE("fading pulse: amplitude decay and spreading", "[problems]")
{
    const ProblemSpec p = ProblemSpec::advection_dispersion();

    // peak height is 1/sqrt(4t + 1) at the advected center
    REQUIRE(exact_solution(p, 1.0, 0.0) == 1.0);
    REQUIRE(exact_solution(p, 1.0 + 0.8 * 5.0, 5.0) ==
            Approx(1.0 / std::sqrt(21.0)).epsilon(1e-15));
    REQUIRE(exact_solution(p, 1.0 + 0.8 * 2.5, 2.5) ==
            Approx(1.0 / std::sqrt(11.0)).epsilon(1e-15));

    // the e-folding half-width grows as sqrt(lambda (4t + 1))
    const double w0 = std::sqrt(p.params.lambda);
    REQUIRE(exact_solution(p, 1.0 + w0, 0.0) ==
            Approx(std::exp(-1.0)).epsilon(1e-14));
    const double w5 = std::sqrt(p.params.lambda * 21.0);
    REQUIRE(exact_solution(p, 1.0 + 0.8 * 5.0 + w5, 5.0) ==
            Approx(std::exp(-1.0) / std::sqrt(21.0)).epsilon(1e-14));
}

TEST_CASE("exact solutions satisfy the transport equation", "[problems]")
{
    // Central-difference residual of u_t + nu u_x - lambda u_xx at random
    // points inside the space-time window where the solution is not
    // vanishingly small (elsewhere the relative check is meaningless).
    std::mt19937_64 rng(20260817);

    const ProblemSpec pa = ProblemSpec::pure_advection();
    std::uniform_real_distribution<double> ta(0.0, 9600.0);
    std::uniform_real_distribution<double> off_a(-3.0 * pa.rho, 3.0 * pa.rho);
    for (int i = 0; i < 100; ++i) {
        const double t = ta(rng);
        const double x = pa.x_tilde + pa.params.nu * t + off_a(rng);
        REQUIRE(std::abs(pde_residual(pa, x, t, 1e-5)) < 1e-5);
    }

    const ProblemSpec ad = ProblemSpec::advection_dispersion();
    std::uniform_real_distribution<double> td(0.1, 5.0);
    std::uniform_real_distribution<double> off_d(-1.0, 1.0);
    for (int i = 0; i < 100; ++i) {
        const double t = td(rng);
        const double x = ad.x_tilde + ad.params.nu * t + off_d(rng);
        REQUIRE(std::abs(pde_residual(ad, x, t, 1e-5)) < 1e-5);
    }
}

TEST_CASE("initial condition samples the exact solution at the nodes",
          "[problems]")
{
    const ProblemSpec p = ProblemSpec::advection_dispersion();
    const GridSpec grid = GridSpec::from_spacing(p.a, p.b, 0.1);
    const std::vector<double> u0 = initial_condition(p, grid);
    REQUIRE(static_cast<int>(u0.size()) == grid.n_nodes);
    for (int m = 1; m <= grid.n_nodes; ++m)
        REQUIRE(u0[m - 1] == exact_solution(p, grid.node(m), 0.0));

    // a grid that does not span the domain is rejected
    const GridSpec off = GridSpec::from_bounds(0.0, 8.0, 81);
    REQUIRE_THROWS_AS(initial_condition(p, off), std::invalid_argument);
    const GridSpec shifted = GridSpec::from_bounds(0.5, 9.5, 91);
    REQUIRE_THROWS_AS(initial_condition(p, shifted), std::invalid_argument);
}

TEST_CASE("boundary data traces the exact solution at the endpoints",
          "[problems]")
{
    for (const ProblemSpec& p : {ProblemSpec::pure_advection(),
                                 ProblemSpec::advection_dispersion()}) {
        const BoundarySpec bc = boundary_values(p);
        for (double t : {0.0, 0.37 * p.t_end, p.t_end}) {
            REQUIRE(bc.left(t) == exact_solution(p, p.a, t));
            REQUIRE(bc.right(t) == exact_solution(p, p.b, t));
        }
    }

    // for the advecting pulse the boundaries stay numerically silent over
    // the whole simulated window: the pulse never gets near an endpoint
    // (the loudest value is the left boundary at t = 0, about 3.4e-12)
    const ProblemSpec pa = ProblemSpec::pure_advection();
    const BoundarySpec bc = boundary_values(pa);
    for (double t : {0.0, 2400.0, 4800.0, 7200.0, 9600.0}) {
        REQUIRE(std::abs(bc.left(t)) < 1e-11);
        REQUIRE(std::abs(bc.right(t)) < 1e-11);
    }
}
