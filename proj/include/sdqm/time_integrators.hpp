#pragma once

#include <array>
#include <cctype>
#include <chrono>
#include <cmath>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace sdqm {

// Fixed-step time integrators for u' = f(t, u). The Rhs callable has
// signature void(double t, std::span<const double> u, std::span<double> dudt).

enum class IntegratorId {
    FORE,   // forward Euler
    IMPOLY, // improved polygon (midpoint)
    HEUN,   // Heun / trapezoidal predictor-corrector
    RK2,    // generic second-order Runge-Kutta (midpoint form)
    RK3,    // Kutta's third-order method
    RK4,    // classical fourth-order Runge-Kutta
    RKF45,  // Runge-Kutta-Fehlberg 4(5), fifth-order solution propagated
    RKCK45, // Cash-Karp 4(5), fifth-order solution propagated
    AB4,    // four-step Adams-Bashforth
    AM4     // Adams-Moulton predictor-corrector (PECE)
};

inline constexpr std::array<IntegratorId, 10> all_integrators = {
    IntegratorId::FORE,  IntegratorId::IMPOLY, IntegratorId::HEUN,
    IntegratorId::RK2,   IntegratorId::RK3,    IntegratorId::RK4,
    IntegratorId::RKF45, IntegratorId::RKCK45, IntegratorId::AB4,
    IntegratorId::AM4};

inline const char* integrator_name(IntegratorId id)
{
    switch (id) {
    case IntegratorId::FORE: return "FORE";
    case IntegratorId::IMPOLY: return "IMPOLY";
    case IntegratorId::HEUN: return "HEUN";
    case IntegratorId::RK2: return "RK2";
    case IntegratorId::RK3: return "RK3";
    case IntegratorId::RK4: return "RK4";
    case IntegratorId::RKF45: return "RKF45";
    case IntegratorId::RKCK45: return "RKCK45";
    case IntegratorId::AB4: return "AB4";
    case IntegratorId::AM4: return "AM4";
    }
    return "?";
}

inline std::optional<IntegratorId> parse_integrator(std::string_view text)
{
    std::string upper(text);
    for (char& ch : upper)
        ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
    for (IntegratorId id : all_integrators)
        if (upper == integrator_name(id))
            return id;
    return std::nullopt;
}

// Order of the propagated solution (the embedded pairs advance their
// fifth-order combination).
inline int integrator_order(IntegratorId id)
{
    switch (id) {
    case IntegratorId::FORE: return 1;
    case IntegratorId::IMPOLY:
    case IntegratorId::HEUN:
    case IntegratorId::RK2: return 2;
    case IntegratorId::RK3: return 3;
    case IntegratorId::RK4: return 4;
    case IntegratorId::RKF45:
    case IntegratorId::RKCK45: return 5;
    case IntegratorId::AB4:
    case IntegratorId::AM4: return 4;
    }
    return 0;
}

inline bool is_multistep(IntegratorId id)
{
    return id == IntegratorId::AB4 || id == IntegratorId::AM4;
}

// Explicit Runge-Kutta tableau. `a` is stored row-major (stages x stages,
// strictly lower triangular), `b` holds the propagated combination weights,
// `b_embedded` the companion weights of an embedded pair (empty otherwise).
struct ButcherTableau {
    int stages = 0;
    std::vector<double> a;
    std::vector<double> b;
    std::vector<double> b_embedded;
    std::vector<double> c;

    double a_at(int row, int col) const
    {
        return a[static_cast<std::size_t>(row) * stages + col];
    }

    // Consistency: each c equals its row sum of a, the b weights sum to 1,
    // and a is strictly lower triangular.
    void validate() const
    {
        if (static_cast<int>(a.size()) != stages * stages ||
            static_cast<int>(b.size()) != stages ||
            static_cast<int>(c.size()) != stages ||
            (!b_embedded.empty() && static_cast<int>(b_embedded.size()) != stages))
            throw std::invalid_argument("ButcherTableau: inconsistent sizes");
        constexpr double tol = 1e-14;
        for (int r = 0; r < stages; ++r) {
            double row_sum = 0.0;
            for (int col = 0; col < stages; ++col) {
                if (col >= r && a_at(r, col) != 0.0)
                    throw std::invalid_argument(
                        "ButcherTableau: a must be strictly lower triangular");
                row_sum += a_at(r, col);
            }
            if (std::abs(row_sum - c[r]) > tol)
                throw std::invalid_argument(
                    "ButcherTableau: row sums of a must equal c");
        }
        double b_sum = 0.0, be_sum = 0.0;
        for (int s = 0; s < stages; ++s) {
            b_sum += b[s];
            if (!b_embedded.empty())
                be_sum += b_embedded[s];
        }
        if (std::abs(b_sum - 1.0) > tol)
            throw std::invalid_argument("ButcherTableau: b must sum to 1");
        if (!b_embedded.empty() && std::abs(be_sum - 1.0) > tol)
            throw std::invalid_argument("ButcherTableau: b_embedded must sum to 1");
    }
};

namespace detail {

inline ButcherTableau make_fore()
{
    return ButcherTableau{1, {0.0}, {1.0}, {}, {0.0}};
}

// Midpoint:      0   |
//                1/2 | 1/2
//                ----+---------
//                    | 0    1
inline ButcherTableau make_midpoint()
{
    return ButcherTableau{2, {0.0, 0.0, 0.5, 0.0}, {0.0, 1.0}, {}, {0.0, 0.5}};
}

// Heun:          0   |
//                1   | 1
//                ----+---------
//                    | 1/2  1/2
inline ButcherTableau make_heun()
{
    return ButcherTableau{2, {0.0, 0.0, 1.0, 0.0}, {0.5, 0.5}, {}, {0.0, 1.0}};
}

// Kutta's third-order method:
//                0   |
//                1/2 | 1/2
//                1   | -1   2
//                ----+--------------
//                    | 1/6  2/3  1/6
inline ButcherTableau make_rk3()
{
    return ButcherTableau{3,
                          {0.0, 0.0, 0.0,
                           0.5, 0.0, 0.0,
                           -1.0, 2.0, 0.0},
                          {1.0 / 6.0, 2.0 / 3.0, 1.0 / 6.0},
                          {},
                          {0.0, 0.5, 1.0}};
}

// Classical RK4:
//                0   |
//                1/2 | 1/2
//                1/2 | 0    1/2
//                1   | 0    0    1
//                ----+-------------------
//                    | 1/6  1/3  1/3  1/6
inline ButcherTableau make_rk4()
{
    return ButcherTableau{4,
                          {0.0, 0.0, 0.0, 0.0,
                           0.5, 0.0, 0.0, 0.0,
                           0.0, 0.5, 0.0, 0.0,
                           0.0, 0.0, 1.0, 0.0},
                          {1.0 / 6.0, 1.0 / 3.0, 1.0 / 3.0, 1.0 / 6.0},
                          {},
                          {0.0, 0.5, 0.5, 1.0}};
}

// Runge-Kutta-Fehlberg 4(5). b carries the fifth-order weights (propagated),
// b_embedded the fourth-order companion.
inline ButcherTableau make_rkf45()
{
    ButcherTableau t;
    t.stages = 6;
    t.a = {0.0, 0.0, 0.0, 0.0, 0.0, 0.0,
           1.0 / 4.0, 0.0, 0.0, 0.0, 0.0, 0.0,
           3.0 / 32.0, 9.0 / 32.0, 0.0, 0.0, 0.0, 0.0,
           1932.0 / 2197.0, -7200.0 / 2197.0, 7296.0 / 2197.0, 0.0, 0.0, 0.0,
           439.0 / 216.0, -8.0, 3680.0 / 513.0, -845.0 / 4104.0, 0.0, 0.0,
           -8.0 / 27.0, 2.0, -3544.0 / 2565.0, 1859.0 / 4104.0, -11.0 / 40.0, 0.0};
    t.b = {16.0 / 135.0, 0.0, 6656.0 / 12825.0, 28561.0 / 56430.0,
           -9.0 / 50.0, 2.0 / 55.0};
    t.b_embedded = {25.0 / 216.0, 0.0, 1408.0 / 2565.0, 2197.0 / 4104.0,
                    -1.0 / 5.0, 0.0};
    t.c = {0.0, 1.0 / 4.0, 3.0 / 8.0, 12.0 / 13.0, 1.0, 1.0 / 2.0};
    return t;
}

// Cash-Karp 4(5). Same convention as RKF45.
inline ButcherTableau make_rkck45()
{
    ButcherTableau t;
    t.stages = 6;
    t.a = {0.0, 0.0, 0.0, 0.0, 0.0, 0.0,
           1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0,
           3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0,
           3.0 / 10.0, -9.0 / 10.0, 6.0 / 5.0, 0.0, 0.0, 0.0,
           -11.0 / 54.0, 5.0 / 2.0, -70.0 / 27.0, 35.0 / 27.0, 0.0, 0.0,
           1631.0 / 55296.0, 175.0 / 512.0, 575.0 / 13824.0,
           44275.0 / 110592.0, 253.0 / 4096.0, 0.0};
    t.b = {37.0 / 378.0, 0.0, 250.0 / 621.0, 125.0 / 594.0, 0.0, 512.0 / 1771.0};
    t.b_embedded = {2825.0 / 27648.0, 0.0, 18575.0 / 48384.0, 13525.0 / 55296.0,
                    277.0 / 14336.0, 1.0 / 4.0};
    t.c = {0.0, 1.0 / 5.0, 3.0 / 10.0, 3.0 / 5.0, 1.0, 7.0 / 8.0};
    return t;
}

} // namespace detail

// Tableau for a single-step method; throws for the multistep ids.
inline const ButcherTableau& tableau_for(IntegratorId id)
{
    static const ButcherTableau fore = detail::make_fore();
    static const ButcherTableau midpoint = detail::make_midpoint();
    static const ButcherTableau heun = detail::make_heun();
    static const ButcherTableau rk3 = detail::make_rk3();
    static const ButcherTableau rk4 = detail::make_rk4();
    static const ButcherTableau rkf45 = detail::make_rkf45();
    static const ButcherTableau rkck45 = detail::make_rkck45();
    switch (id) {
    case IntegratorId::FORE: return fore;
    case IntegratorId::IMPOLY: return midpoint;
    case IntegratorId::RK2: return midpoint;
    case IntegratorId::HEUN: return heun;
    case IntegratorId::RK3: return rk3;
    case IntegratorId::RK4: return rk4;
    case IntegratorId::RKF45: return rkf45;
    case IntegratorId::RKCK45: return rkck45;
    case IntegratorId::AB4:
    case IntegratorId::AM4:
        throw std::invalid_argument(
            "tableau_for: multistep methods have no Butcher tableau");
    }
    throw std::invalid_argument("tableau_for: unknown integrator");
}

// Any non-finite component, or any magnitude above this threshold, counts
// as a diverged trajectory.
inline constexpr double divergence_threshold = 1e10;

inline bool detect_divergence(std::span<const double> u)
{
    for (double v : u)
        if (!std::isfinite(v) || std::abs(v) > divergence_threshold)
            return true;
    return false;
}

// One explicit Runge-Kutta step with the propagated weights b.
template <class Rhs>
std::vector<double> rk_step(const ButcherTableau& tab, Rhs&& rhs, double t,
                            std::span<const double> u, double dt)
{
    const std::size_t n = u.size();
    std::vector<std::vector<double>> k(tab.stages, std::vector<double>(n));
    std::vector<double> stage_state(n);
    for (int s = 0; s < tab.stages; ++s) {
        for (std::size_t i = 0; i < n; ++i) {
            double acc = u[i];
            for (int j = 0; j < s; ++j)
                acc += dt * tab.a_at(s, j) * k[j][i];
            stage_state[i] = acc;
        }
        rhs(t + tab.c[s] * dt, std::span<const double>(stage_state),
            std::span<double>(k[s]));
    }
    std::vector<double> out(u.begin(), u.end());
    for (int s = 0; s < tab.stages; ++s) {
        const double w = tab.b[s];
        if (w == 0.0)
            continue;
        for (std::size_t i = 0; i < n; ++i)
            out[i] += dt * w * k[s][i];
    }
    return out;
}

// Embedded-pair error estimate dt * sum_s (b[s] - b_embedded[s]) * k_s for
// the step taken from (t, u). Requires a tableau with embedded weights.
template <class Rhs>
std::vector<double> rk_embedded_error(const ButcherTableau& tab, Rhs&& rhs,
                                      double t, std::span<const double> u,
                                      double dt)
{
    if (tab.b_embedded.empty())
        throw std::invalid_argument(
            "rk_embedded_error: tableau has no embedded weights");
    const std::size_t n = u.size();
    std::vector<std::vector<double>> k(tab.stages, std::vector<double>(n));
    std::vector<double> stage_state(n);
    for (int s = 0; s < tab.stages; ++s) {
        for (std::size_t i = 0; i < n; ++i) {
            double acc = u[i];
            for (int j = 0; j < s; ++j)
                acc += dt * tab.a_at(s, j) * k[j][i];
            stage_state[i] = acc;
        }
        rhs(t + tab.c[s] * dt, std::span<const double>(stage_state),
            std::span<double>(k[s]));
    }
    std::vector<double> est(n, 0.0);
    for (int s = 0; s < tab.stages; ++s) {
        const double w = tab.b[s] - tab.b_embedded[s];
        for (std::size_t i = 0; i < n; ++i)
            est[i] += dt * w * k[s][i];
    }
    return est;
}

// One four-step Adams-Bashforth step from u_n using the derivative history
// f_n, f_{n-1}, f_{n-2}, f_{n-3}:
//
//     u_{n+1} = u_n + dt/24 * (55 f_n - 59 f_{n-1} + 37 f_{n-2} - 9 f_{n-3})
inline std::vector<double> ab4_step(std::span<const double> u_n,
                                    std::span<const double> f_n,
                                    std::span<const double> f_nm1,
                                    std::span<const double> f_nm2,
                                    std::span<const double> f_nm3, double dt)
{
    const std::size_t n = u_n.size();
    if (f_n.size() != n || f_nm1.size() != n || f_nm2.size() != n ||
        f_nm3.size() != n)
        throw std::invalid_argument("ab4_step: history size mismatch");
    std::vector<double> out(n);
    const double h = dt / 24.0;
    for (std::size_t i = 0; i < n; ++i)
        out[i] = u_n[i] +
                 h * (55.0 * f_n[i] - 59.0 * f_nm1[i] + 37.0 * f_nm2[i] -
                      9.0 * f_nm3[i]);
    return out;
}

template <class T>
struct MultistepResult {
    std::vector<T> state;      // u_{n+1}
    std::vector<T> derivative; // f(t_{n+1}, u_{n+1}), ready for the history
};

// One Adams-Moulton predictor-corrector step (PECE): predict with AB4,
// evaluate, correct with the three-step Adams-Moulton formula
//
//     u_{n+1} = u_n + dt/24 * (9 f_pred + 19 f_n - 5 f_{n-1} + f_{n-2}),
//
// then evaluate once more at the corrected state.
template <class Rhs>
MultistepResult<double> am4_pece_step(Rhs&& rhs, double t_next,
                                      std::span<const double> u_n,
                                      std::span<const double> f_n,
                                      std::span<const double> f_nm1,
                                      std::span<const double> f_nm2,
                                      std::span<const double> f_nm3, double dt)
{
    const std::size_t n = u_n.size();
    std::vector<double> pred = ab4_step(u_n, f_n, f_nm1, f_nm2, f_nm3, dt);
    std::vector<double> f_pred(n);
    rhs(t_next, std::span<const double>(pred), std::span<double>(f_pred));
    MultistepResult<double> result;
    result.state.resize(n);
    const double h = dt / 24.0;
    for (std::size_t i = 0; i < n; ++i)
        result.state[i] = u_n[i] + h * (9.0 * f_pred[i] + 19.0 * f_n[i] -
                                        5.0 * f_nm1[i] + f_nm2[i]);
    result.derivative.resize(n);
    rhs(t_next, std::span<const double>(result.state),
        std::span<double>(result.derivative));
    return result;
}

enum class SolveStatus { completed, diverged };

struct SolveOutcome {
    SolveStatus status = SolveStatus::completed;
    std::vector<double> final_state; // state at t_end, or at divergence
    long steps_taken = 0;
    long diverged_at_step = 0; // meaningful only when status == diverged
    double wall_time_seconds = 0.0;
};

// Advance u0 by n_steps fixed steps of size dt. The observer is invoked
// after every accepted step as observe(step, t, state). Multistep methods
// bootstrap their derivative history with classical RK4 for the first three
// steps (those steps are bit-identical to an RK4 run). Divergence is checked
// after every step; on divergence the outcome records the offending step and
// the state that triggered it.
template <class Rhs, class Observer>
SolveOutcome integrate(Rhs&& rhs, std::span<const double> u0, double dt,
                       long n_steps, IntegratorId method, Observer&& observe)
{
    if (!(dt > 0.0))
        throw std::invalid_argument("integrate: dt must be positive");
    if (n_steps < 0)
        throw std::invalid_argument("integrate: n_steps must be >= 0");

    const auto start = std::chrono::steady_clock::now();
    const auto elapsed = [&start] {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                             start)
            .count();
    };

    SolveOutcome outcome;
    std::vector<double> u(u0.begin(), u0.end());

    const auto step_diverged = [&](long step) {
        outcome.status = SolveStatus::diverged;
        outcome.diverged_at_step = step;
        outcome.steps_taken = step;
        outcome.final_state = u;
        outcome.wall_time_seconds = elapsed();
    };

    if (!is_multistep(method)) {
        const ButcherTableau& tab = tableau_for(method);
        for (long step = 1; step <= n_steps; ++step) {
            const double t = (step - 1) * dt;
            u = rk_step(tab, rhs, t, u, dt);
            if (detect_divergence(u)) {
                step_diverged(step);
                return outcome;
            }
            observe(step, step * dt, std::span<const double>(u));
        }
        outcome.final_state = std::move(u);
        outcome.steps_taken = n_steps;
        outcome.wall_time_seconds = elapsed();
        return outcome;
    }

    // Multistep path: RK4 bootstrap, then AB4 / AM4 with a rolling history
    // of the last four derivative evaluations (newest first).
    const ButcherTableau& rk4 = tableau_for(IntegratorId::RK4);
    const std::size_t n = u.size();
    std::array<std::vector<double>, 4> f_hist;
    f_hist[3].resize(n);
    rhs(0.0, std::span<const double>(u), std::span<double>(f_hist[3]));

    const long bootstrap = std::min<long>(3, n_steps);
    for (long step = 1; step <= bootstrap; ++step) {
        const double t = (step - 1) * dt;
        u = rk_step(rk4, rhs, t, u, dt);
        if (detect_divergence(u)) {
            step_diverged(step);
            return outcome;
        }
        observe(step, step * dt, std::span<const double>(u));
        f_hist[3 - step].resize(n);
        rhs(step * dt, std::span<const double>(u),
            std::span<double>(f_hist[3 - step]));
    }

    for (long step = 4; step <= n_steps; ++step) {
        const double t_next = step * dt;
        std::vector<double> f_next;
        if (method == IntegratorId::AB4) {
            u = ab4_step(u, f_hist[0], f_hist[1], f_hist[2], f_hist[3], dt);
            if (detect_divergence(u)) {
                step_diverged(step);
                return outcome;
            }
            f_next.resize(n);
            rhs(t_next, std::span<const double>(u), std::span<double>(f_next));
        } else {
            MultistepResult<double> r =
                am4_pece_step(rhs, t_next, u, f_hist[0], f_hist[1], f_hist[2],
                              f_hist[3], dt);
            u = std::move(r.state);
            if (detect_divergence(u)) {
                step_diverged(step);
                return outcome;
            }
            f_next = std::move(r.derivative);
        }
        observe(step, t_next, std::span<const double>(u));
        f_hist[3] = std::move(f_hist[2]);
        f_hist[2] = std::move(f_hist[1]);
        f_hist[1] = std::move(f_hist[0]);
        f_hist[0] = std::move(f_next);
    }

    outcome.final_state = std::move(u);
    outcome.steps_taken = n_steps;
    outcome.wall_time_seconds = elapsed();
    return outcome;
}

template <class Rhs>
SolveOutcome integrate(Rhs&& rhs, std::span<const double> u0, double dt,
                       long n_steps, IntegratorId method)
{
    return integrate(std::forward<Rhs>(rhs), u0, dt, n_steps, method,
                     [](long, double, std::span<const double>) {});
}

} // namespace sdqm
