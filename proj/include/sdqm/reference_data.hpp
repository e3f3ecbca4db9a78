#pragma once

#include <array>
#include <limits>
#include <stdexcept>
#include <vector>

#include "sdqm/benchmark_problems.hpp"
#include "sdqm/time_integrators.hpp"

namespace sdqm {

// Published L_inf reference values for the two benchmark tables, embedded
// together with the gate each cell is held to when the tables are
// reproduced:
//
//   tolerance           relative agreement within rel_tol (unambiguous
//                       method definitions)
//   order_of_magnitude  agreement within a factor of 10 (cells where the
//                       reference's integrator variant or noise floor is
//                       ambiguous; see the per-cell notes)
//   must_diverge        the run must trip the divergence detector, matching
//                       the reference's unbounded entry
//
// Cells whose reference values are demonstrably not reproducible from the
// method definitions carry a note explaining the discrepancy; the notes are
// printed with the report so a failing gate is never silent.

enum class GateKind { tolerance, order_of_magnitude, must_diverge };

struct ReferenceCell {
    bool divergent = false; // reference prints unbounded growth
    double value = std::numeric_limits<double>::quiet_NaN();
    GateKind gate = GateKind::tolerance;
    double rel_tol = 0.10;
    const char* note = nullptr;
};

struct ReferenceRow {
    IntegratorId method;
    std::array<ReferenceCell, 4> cells;
};

// Rows reported alongside the benchmark tables for context only (different
// spatial discretizations or variable-step integrators); they are printed,
// never run. NaN marks an empty cell, +inf an unbounded one.
struct ComparisonRow {
    const char* label;
    std::array<double, 4> cells;
    const char* note = nullptr;
};

struct ReferenceTable {
    int id;
    const char* title;
    ProblemKind problem;
    std::array<const char*, 4> column_labels;
    std::array<double, 4> dx;
    std::array<double, 4> dt;
    std::vector<ReferenceRow> rows;
    std::vector<ComparisonRow> comparison_rows;
};

namespace detail {

inline ReferenceCell tol_cell(double value, double rel_tol = 0.10,
                              const char* note = nullptr)
{
    return ReferenceCell{false, value, GateKind::tolerance, rel_tol, note};
}

inline ReferenceCell oom_cell(double value, const char* note = nullptr)
{
    return ReferenceCell{false, value, GateKind::order_of_magnitude, 0.0, note};
}

inline ReferenceCell div_cell()
{
    return ReferenceCell{true, std::numeric_limits<double>::quiet_NaN(),
                         GateKind::must_diverge, 0.0, nullptr};
}

inline constexpr double blank = std::numeric_limits<double>::quiet_NaN();
inline constexpr double unbounded = std::numeric_limits<double>::infinity();

// Analysis notes for reference cells that cannot be reproduced from the
// stated method definitions (kept with the data so reports explain
// themselves).
inline constexpr const char* note_rk4_t1_5050 =
    "reference exponent inconsistent: computed error matches the mantissa at "
    "1e-4 scale and follows the method's dt^4 scaling from the (25,10) cell";
inline constexpr const char* note_ab4_t1_2510 =
    "AB4 is linearly unstable here (characteristic root modulus 1.29 at the "
    "system's extreme eigenvalue); the bounded reference equals the "
    "instability-free truncation error, unreachable in floating point";
inline constexpr const char* note_noise_floor_t1_2510 =
    "reference sits at the source data's ~1e-7 noise floor (all published "
    "high-order integrators cluster there); computed truncation error is "
    "genuinely below it";
inline constexpr const char* note_rkck_t1_2550 =
    "bounded roundoff-seeded instability: the final magnitude depends "
    "exponentially on the roundoff seed and is not reproducible across "
    "arithmetic environments";
inline constexpr const char* note_rk4_t2_0025 =
    "computed value is clean fourth-order truncation (neighboring methods "
    "match to <0.1%); the reference carries ~25% excess at this scale";

inline ReferenceTable make_table1()
{
    using I = IntegratorId;
    ReferenceTable t;
    t.id = 1;
    t.title = "advecting Gaussian pulse, L_inf error at t = 9600";
    t.problem = ProblemKind::pure_advection;
    t.column_labels = {"(200,50)", "(50,50)", "(25,50)", "(25,10)"};
    t.dx = {200.0, 50.0, 25.0, 25.0};
    t.dt = {50.0, 50.0, 50.0, 10.0};
    t.rows = {
        {I::FORE,
         {tol_cell(533.5714), div_cell(), div_cell(), div_cell()}},
        {I::IMPOLY,
         {tol_cell(3.9486e-1), div_cell(), div_cell(),
          oom_cell(1.7442e-2,
                   "reference disagrees with its own HEUN entry although the "
                   "two schemes coincide on linear autonomous systems")}},
        {I::HEUN,
         {tol_cell(3.9486e-1), div_cell(), div_cell(), tol_cell(1.5005e-2)}},
        {I::RK2,
         {oom_cell(3.9486e-1), div_cell(), div_cell(), oom_cell(1.7442e-2)}},
        {I::RK3,
         {tol_cell(1.9080e-2), tol_cell(1.8821e-2), div_cell(),
          tol_cell(1.5429e-4)}},
        {I::RK4,
         {tol_cell(1.9151e-3), tol_cell(7.0186e-5, 0.10, note_rk4_t1_5050),
          div_cell(), tol_cell(1.1436e-6)}},
        {I::RKF45,
         {oom_cell(1.9186e-3), oom_cell(1.8497e-5), oom_cell(1.8834e-5),
          oom_cell(7.5235e-8, note_noise_floor_t1_2510)}},
        {I::RKCK45,
         {oom_cell(1.9183e-3), oom_cell(3.0192e-6),
          oom_cell(23025.3677, note_rkck_t1_2550),
          oom_cell(7.4091e-8, note_noise_floor_t1_2510)}},
        {I::AB4,
         {tol_cell(2.8709e-2), div_cell(), div_cell(),
          tol_cell(4.6886e-5, 0.10, note_ab4_t1_2510)}},
        {I::AM4,
         {tol_cell(2.5487e-3), div_cell(), div_cell(), tol_cell(3.5583e-6)}},
    };
    t.comparison_rows = {
        {"RB34", {1.9182e-3, 6.1214e-5, 6.1275e-5, 1.1967e-7}},
        {"GB", {1.9183e-3, 8.7642e-8, 2.0875e-7, 1.1584e-7}},
        {"CSDQM", {1.15, 8.00e-3, 1.00e-3, blank}},
        {"FEMLSF", {1.35, 3.80e-1, 3.77e-1, blank}},
        {"FEMQSF", {5.18e-1, 3.73e-1, 3.79e-1, blank}},
        {"CD6", {4.29e-1, 8.00e-4, 7.00e-4, blank}},
        {"EXCBS", {6.07e-1, 2.20e-3, blank, blank}, "also reports 3.44e-06 at (10,10)"},
    };
    return t;
}

inline ReferenceTable make_table2()
{
    using I = IntegratorId;
    // The 0.2 column is gated at 5% for every method: spatial error
    // dominates there, so the integrator variant cannot matter.
    constexpr double col0_tol = 0.05;
    ReferenceTable t;
    t.id = 2;
    t.title = "fading Gaussian pulse, L_inf error at t = 5";
    t.problem = ProblemKind::advection_dispersion;
    t.column_labels = {"(0.2,0.0125)", "(0.1,0.0125)", "(0.05,0.0125)",
                       "(0.025,0.0125)"};
    t.dx = {0.2, 0.1, 0.05, 0.025};
    t.dt = {0.0125, 0.0125, 0.0125, 0.0125};
    t.rows = {
        {I::FORE,
         {tol_cell(4.7876e-1, col0_tol), tol_cell(2.2734e-1),
          tol_cell(2.2243e-1), div_cell()}},
        {I::IMPOLY,
         {tol_cell(1.3818e-1, col0_tol), tol_cell(9.9836e-3),
          tol_cell(1.6755e-3), tol_cell(1.6842e-3)}},
        {I::HEUN,
         {tol_cell(1.3818e-1, col0_tol), tol_cell(9.9836e-3),
          tol_cell(1.6755e-3), tol_cell(1.6842e-3)}},
        {I::RK2,
         {tol_cell(1.3855e-1, col0_tol), oom_cell(9.9836e-3),
          oom_cell(1.7655e-3), oom_cell(1.6842e-3)}},
        {I::RK3,
         {tol_cell(1.3848e-1, col0_tol), tol_cell(9.9843e-3),
          tol_cell(1.1087e-4), tol_cell(3.9909e-5)}},
        {I::RK4,
         {tol_cell(1.3855e-1, col0_tol), tol_cell(9.9863e-3),
          tol_cell(1.1070e-4), tol_cell(8.8121e-7, 0.10, note_rk4_t2_0025)}},
        {I::RKF45,
         {tol_cell(1.3855e-1, col0_tol), oom_cell(9.9863e-3),
          oom_cell(1.1071e-4), oom_cell(1.1869e-8)}},
        {I::RKCK45,
         {tol_cell(1.3855e-1, col0_tol), oom_cell(9.9863e-3),
          oom_cell(1.1071e-4), oom_cell(8.6012e-9)}},
        {I::AB4,
         {tol_cell(1.3856e-1, col0_tol), tol_cell(9.9860e-3), div_cell(),
          div_cell()}},
        {I::AM4,
         {tol_cell(1.3855e-1, col0_tol), tol_cell(9.9864e-3),
          tol_cell(1.1073e-4), div_cell()}},
    };
    t.comparison_rows = {
        {"RB34", {1.3855e-1, 9.9863e-3, 1.1071e-4, unbounded}},
        {"GB", {1.3855e-1, 9.9863e-3, 1.1071e-4, 1.9130e-8}},
        {"CSDQM-I", {1.25e-1, 6.95e-3, 1.21e-3, 3.07e-4}},
        {"CSDQM-II", {1.36e-1, 1.45e-2, 2.88e-4, 1.81e-5}},
    };
    return t;
}

} // namespace detail

inline const ReferenceTable& reference_table(int id)
{
    static const ReferenceTable t1 = detail::make_table1();
    static const ReferenceTable t2 = detail::make_table2();
    if (id == 1)
        return t1;
    if (id == 2)
        return t2;
    throw std::invalid_argument("reference_table: id must be 1 or 2");
}

} // namespace sdqm
