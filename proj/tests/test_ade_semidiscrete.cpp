#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include <sdqm/ade_semidiscrete.hpp>
#include <sdqm/benchmark_problems.hpp>
#include <sdqm/dqm_weights.hpp>
#include <sdqm/grid.hpp>

using namespace sdqm;
using Catch::Approx;

namespace {

BoundarySpec zero_boundary()
{
    return BoundarySpec{[](double) { return 0.0; }, [](double) { return 0.0; }};
}

BoundarySpec wavy_boundary()
{
    return BoundarySpec{[](double t) { return std::sin(t) + 0.3; },
                        [](double t) { return std::cos(2.0 * t) - 0.1; }};
}

} // namespace

TEST_CASE("interior matrix combines the weight matrices", "[semidiscrete]")
{
    const GridSpec g = GridSpec::from_bounds(0.0, 9000.0, 361); // dx = 25
    const AdeParameters adv{0.5, 0.0};
    const SemiDiscreteSystem sys = assemble(adv, g, zero_boundary());
    REQUIRE(sys.interior_size() == 359);
    // pure advection: entry for column one to the right of the diagonal is
    // -nu * w1 = -0.5 * 0.04 = -0.02
    REQUIRE(sys.a(5, 6) == Approx(-0.02).epsilon(1e-15));
    REQUIRE(sys.a(5, 4) == Approx(0.02).epsilon(1e-15));
    REQUIRE(sys.a(5, 5) == 0.0);

    const GridSpec h = GridSpec::from_bounds(0.0, 9.0, 91); // dx = 0.1
    const AdeParameters fade{0.8, 0.005};
    const SemiDiscreteSystem sysf = assemble(fade, h, zero_boundary());
    // diagonal: lambda * (-pi^2 / (3 dx^2));
    // j = +-1: -nu * (-+10) + lambda * 200 = +-8 + 1
    const double diag = 0.005 * (-std::numbers::pi * std::numbers::pi / 0.03);
    REQUIRE(sysf.a(7, 7) == Approx(diag).epsilon(1e-14));
    REQUIRE(sysf.a(7, 6) == Approx(9.0).epsilon(1e-14));
    REQUIRE(sysf.a(7, 8) == Approx(-7.0).epsilon(1e-14));
}

TEST_CASE("advection-only interior matrix is antisymmetric", "[semidiscrete]")
{
    const GridSpec g = GridSpec::from_bounds(0.0, 40.0, 41);
    const SemiDiscreteSystem sys = assemble({0.7, 0.0}, g, zero_boundary());
    const int k = sys.interior_size();
    for (int r = 0; r < k; ++r)
        for (int c = 0; c < k; ++c)
            REQUIRE(sys.a(r, c) == -sys.a(c, r));
}

TEST_CASE("boundary coupling columns match the eliminated nodes",
          "[semidiscrete]")
{
    const GridSpec g = GridSpec::from_bounds(0.0, 10.0, 11);
    const AdeParameters p{0.8, 0.005};
    const SemiDiscreteSystem sys = assemble(p, g, zero_boundary());
    const WeightMatrix w1 = first_order_weights(g);
    const WeightMatrix w2 = second_order_weights(g);
    for (int r = 0; r < sys.interior_size(); ++r) {
        const int m = r + 2;
        REQUIRE(sys.boundary_coupling_left()[r] ==
                Approx(-p.nu * w1.at(m, 1) + p.lambda * w2.at(m, 1))
                    .epsilon(1e-15));
        REQUIRE(sys.boundary_coupling_right()[r] ==
                Approx(-p.nu * w1.at(m, 11) + p.lambda * w2.at(m, 11))
                    .epsilon(1e-15));
    }
}

TEST_CASE("rhs equals the brute-force collocation sum", "[semidiscrete]")
{
    // Oracle: evaluate -nu u_x + lambda u_xx at every interior node by the
    // full N-term quadrature sum with the boundary values spliced in.
    std::mt19937_64 rng(20240817);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    std::uniform_real_distribution<double> time_dist(0.0, 10.0);

    const struct {
        int n;
        double nu, lambda;
    } cases[] = {{5, 0.5, 0.0}, {20, 0.8, 0.005}, {101, -0.3, 0.02}};

    for (const auto& c : cases) {
        const GridSpec g = GridSpec::from_bounds(0.0, 1.0, c.n);
        const BoundarySpec bc = wavy_boundary();
        const SemiDiscreteSystem sys = assemble({c.nu, c.lambda}, g, bc);
        const WeightMatrix w1 = first_order_weights(g);
        const WeightMatrix w2 = second_order_weights(g);
        const int k = sys.interior_size();

        for (int draw = 0; draw < 34; ++draw) {
            std::vector<double> u(k);
            for (double& v : u)
                v = unif(rng);
            const double t = time_dist(rng);

            std::vector<double> full(c.n);
            full.front() = bc.left(t);
            for (int i = 0; i < k; ++i)
                full[i + 1] = u[i];
            full.back() = bc.right(t);

            const std::vector<double> got = sys.rhs(t, u);
            double scale = 0.0, err = 0.0;
            for (int r = 0; r < k; ++r) {
                const int m = r + 2;
                double acc = 0.0;
                for (int i = 1; i <= c.n; ++i)
                    acc += (-c.nu * w1.at(m, i) + c.lambda * w2.at(m, i)) *
                           full[i - 1];
                scale = std::max(scale, std::abs(acc));
                err = std::max(err, std::abs(acc - got[r]));
            }
            REQUIRE(err <= 1e-13 * scale);
        }
    }
}

TEST_CASE("rhs approximates the advection operator on a smooth pulse",
          "[semidiscrete]")
{
    const ProblemSpec p = ProblemSpec::pure_advection();
    const GridSpec g = GridSpec::from_spacing(p.a, p.b, 25.0);
    const SemiDiscreteSystem sys = assemble(p.params, g, boundary_values(p));
    const std::vector<double> full = initial_condition(p, g);
    const std::vector<double> u(full.begin() + 1, full.end() - 1);
    const std::vector<double> dudt = sys.rhs(0.0, u);

    double scale = 0.0, err = 0.0;
    for (int r = 0; r < sys.interior_size(); ++r) {
        const double x = g.node(r + 2);
        const double shift = x - p.x_tilde;
        if (std::abs(shift) > 2.0 * p.rho)
            continue;
        const double ux = -shift / (p.rho * p.rho) * full[r + 1];
        const double expected = -p.params.nu * ux;
        scale = std::max(scale, std::abs(expected));
        err = std::max(err, std::abs(dudt[r] - expected));
    }
    REQUIRE(err / scale < 1e-4);
}

TEST_CASE("full_state splices the boundary values", "[semidiscrete]")
{
    const GridSpec g = GridSpec::from_bounds(0.0, 10.0, 11);
    const BoundarySpec bc = wavy_boundary();
    const SemiDiscreteSystem sys = assemble({1.0, 0.0}, g, bc);
    std::vector<double> u(9);
    for (int i = 0; i < 9; ++i)
        u[i] = i + 1.0;
    const double t = 2.5;
    const std::vector<double> full = sys.full_state(t, u);
    REQUIRE(full.size() == 11);
    REQUIRE(full.front() == bc.left(t));
    REQUIRE(full.back() == bc.right(t));
    for (int i = 0; i < 9; ++i)
        REQUIRE(full[i + 1] == u[i]);
}

TEST_CASE("semi-discrete system validates its inputs", "[semidiscrete]")
{
    const GridSpec g = GridSpec::from_bounds(0.0, 10.0, 11);
    REQUIRE_THROWS_AS(assemble({1.0, -0.1}, g, zero_boundary()),
                      std::invalid_argument);
    REQUIRE_THROWS_AS(
        assemble({1.0, 0.0}, g,
                 BoundarySpec{nullptr, [](double) { return 0.0; }}),
        std::invalid_argument);
    const SemiDiscreteSystem sys = assemble({1.0, 0.0}, g, zero_boundary());
    const std::vector<double> wrong(5, 0.0);
    REQUIRE_THROWS_AS(sys.rhs(0.0, wrong), std::invalid_argument);
    REQUIRE_THROWS_AS(sys.full_state(0.0, wrong), std::invalid_argument);
}
