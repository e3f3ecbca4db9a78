#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <istream>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "sdqm/ade_semidiscrete.hpp"
#include "sdqm/benchmark_problems.hpp"
#include "sdqm/grid.hpp"
#include "sdqm/metrics.hpp"
#include "sdqm/reference_data.hpp"
#include "sdqm/time_integrators.hpp"

namespace sdqm {

// Benchmark harness: single-case runs driven by flat key=value config files,
// CSV emission, and reproduction of the two embedded reference tables.

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CaseConfig {
    ProblemKind problem = ProblemKind::pure_advection;
    IntegratorId method = IntegratorId::RK4;
    double dx = 0.0;
    double dt = 0.0;
    std::optional<double> t_end;
    std::optional<double> nu;
    std::optional<double> lambda;
    std::optional<double> rho;
    std::optional<double> x_tilde;
    std::string out; // solution CSV path; empty = no file output
    // Error-history sampling stride in steps; 0 picks the problem default
    // (50 for pure_advection, 10 for advection_dispersion).
    long sample_interval = 0;
};

struct CaseReport {
    CaseConfig config;
    ProblemSpec problem;
    GridSpec grid;
    long n_steps = 0;
    SolveStatus status = SolveStatus::completed;
    long diverged_at_step = 0;
    long steps_taken = 0;
    double wall_time_seconds = 0.0;
    ErrorSample final_error; // linf is NaN when diverged
    std::vector<ErrorSample> series;
    std::vector<double> final_state; // full N-node profile (at divergence if diverged)
};

namespace detail {

inline std::string_view trim(std::string_view s)
{
    const auto notspace = [](char c) {
        return c != ' ' && c != '\t' && c != '\r' && c != '\n';
    };
    while (!s.empty() && !notspace(s.front()))
        s.remove_prefix(1);
    while (!s.empty() && !notspace(s.back()))
        s.remove_suffix(1);
    return s;
}

inline double parse_number(const std::string& key, std::string_view text)
{
    const std::string value(text);
    std::size_t used = 0;
    double parsed = 0.0;
    try {
        parsed = std::stod(value, &used);
    } catch (const std::exception&) {
        throw ConfigError("config: key '" + key + "' has non-numeric value '" +
                          value + "'");
    }
    if (used != value.size())
        throw ConfigError("config: key '" + key + "' has non-numeric value '" +
                          value + "'");
    return parsed;
}

inline std::string format_g17(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace detail

// Flat key=value configuration. Recognized keys: problem, method, dx, dt,
// t_end, nu, lambda, rho, x_tilde, out. '#' starts a comment; blank lines
// are ignored; every key may appear at most once; unknown keys are errors.
inline CaseConfig parse_config(std::istream& in)
{
    std::map<std::string, std::string> entries;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        const std::string_view stripped = detail::trim(line);
        if (stripped.empty())
            continue;
        const auto eq = stripped.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError("config line " + std::to_string(line_no) +
                              ": expected key=value");
        const std::string key(detail::trim(stripped.substr(0, eq)));
        const std::string value(detail::trim(stripped.substr(eq + 1)));
        if (key.empty() || value.empty())
            throw ConfigError("config line " + std::to_string(line_no) +
                              ": expected key=value");
        if (!entries.emplace(key, value).second)
            throw ConfigError("config: duplicate key '" + key + "'");
    }

    static const char* known[] = {"problem", "method", "dx",      "dt", "t_end",
                                  "nu",      "lambda", "rho", "x_tilde", "out"};
    for (const auto& [key, value] : entries)
        if (std::find_if(std::begin(known), std::end(known), [&](const char* k) {
                return key == k;
            }) == std::end(known))
            throw ConfigError("config: unknown key '" + key + "'");
    for (const char* required : {"problem", "method", "dx", "dt"})
        if (!entries.count(required))
            throw ConfigError(std::string("config: missing required key '") +
                              required + "'");

    CaseConfig cfg;
    {
        std::string value = entries.at("problem");
        for (char& ch : value)
            ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
        if (value == "pure_advection")
            cfg.problem = ProblemKind::pure_advection;
        else if (value == "advection_dispersion")
            cfg.problem = ProblemKind::advection_dispersion;
        else
            throw ConfigError("config: unknown problem '" + entries.at("problem") +
                              "' (expected pure_advection or advection_dispersion)");
    }
    if (const auto id = parse_integrator(entries.at("method")))
        cfg.method = *id;
    else
        throw ConfigError("config: unknown method '" + entries.at("method") + "'");

    cfg.dx = detail::parse_number("dx", entries.at("dx"));
    cfg.dt = detail::parse_number("dt", entries.at("dt"));
    for (const auto& [key, slot] :
         std::initializer_list<std::pair<const char*, std::optional<double>*>>{
             {"t_end", &cfg.t_end},
             {"nu", &cfg.nu},
             {"lambda", &cfg.lambda},
             {"rho", &cfg.rho},
             {"x_tilde", &cfg.x_tilde}})
        if (const auto it = entries.find(key); it != entries.end())
            *slot = detail::parse_number(key, it->second);
    if (const auto it = entries.find("out"); it != entries.end())
        cfg.out = it->second;
    return cfg;
}

inline CaseConfig parse_config_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("config: cannot open '" + path + "'");
    return parse_config(in);
}

// Resolve the problem spec a config describes (defaults plus overrides).
inline ProblemSpec resolve_problem(const CaseConfig& cfg)
{
    ProblemSpec p = cfg.problem == ProblemKind::pure_advection
                        ? ProblemSpec::pure_advection()
                        : ProblemSpec::advection_dispersion();
    if (cfg.t_end)
        p.t_end = *cfg.t_end;
    if (cfg.nu)
        p.params.nu = *cfg.nu;
    if (cfg.lambda) {
        if (cfg.problem == ProblemKind::pure_advection && *cfg.lambda != 0.0)
            throw ConfigError(
                "config: pure_advection has a closed-form solution only for "
                "lambda = 0; nonzero lambda override is not meaningful");
        p.params.lambda = *cfg.lambda;
    }
    if (cfg.rho) {
        if (cfg.problem == ProblemKind::advection_dispersion)
            throw ConfigError(
                "config: rho only applies to the pure_advection problem");
        if (!(*cfg.rho > 0.0))
            throw ConfigError("config: rho must be positive");
        p.rho = *cfg.rho;
    }
    if (cfg.x_tilde)
        p.x_tilde = *cfg.x_tilde;
    if (!(p.t_end > 0.0))
        throw ConfigError("config: t_end must be positive");
    return p;
}

inline long default_sample_interval(ProblemKind kind)
{
    return kind == ProblemKind::pure_advection ? 50 : 10;
}

// Number of fixed steps covering [0, t_end]; dt must divide t_end to within
// a 1e-9 relative tolerance.
inline long resolve_step_count(double t_end, double dt)
{
    if (!(dt > 0.0))
        throw ConfigError("config: dt must be positive");
    const double steps = t_end / dt;
    const double rounded = std::round(steps);
    if (rounded < 1.0 || std::abs(steps - rounded) > 1e-9 * steps)
        throw ConfigError("config: dt does not evenly divide t_end");
    return static_cast<long>(rounded);
}

inline CaseReport run_case(const CaseConfig& cfg)
{
    CaseReport report;
    report.config = cfg;
    report.problem = resolve_problem(cfg);
    const ProblemSpec& p = report.problem;

    GridSpec grid;
    try {
        grid = GridSpec::from_spacing(p.a, p.b, cfg.dx);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    report.grid = grid;
    report.n_steps = resolve_step_count(p.t_end, cfg.dt);

    const SemiDiscreteSystem system =
        assemble(p.params, grid, boundary_values(p));
    const std::vector<double> u0_full = initial_condition(p, grid);
    const std::vector<double> u0(u0_full.begin() + 1, u0_full.end() - 1);

    const long interval = cfg.sample_interval > 0
                              ? cfg.sample_interval
                              : default_sample_interval(p.kind);

    std::vector<double> exact(grid.n_nodes);
    const auto sample_error = [&](double t, std::span<const double> interior) {
        const std::vector<double> full = system.full_state(t, interior);
        for (int m = 1; m <= grid.n_nodes; ++m)
            exact[m - 1] = exact_solution(p, grid.node(m), t);
        report.series.push_back(linf_error(full, exact, grid, t));
    };

    const auto rhs = [&system](double t, std::span<const double> u,
                               std::span<double> dudt) {
        system.rhs_into(t, u, dudt);
    };
    const auto observer = [&](long step, double t, std::span<const double> u) {
        if (step % interval == 0 || step == report.n_steps)
            sample_error(t, u);
    };

    SolveOutcome outcome =
        integrate(rhs, u0, cfg.dt, report.n_steps, cfg.method, observer);

    report.status = outcome.status;
    report.diverged_at_step = outcome.diverged_at_step;
    report.steps_taken = outcome.steps_taken;
    report.wall_time_seconds = outcome.wall_time_seconds;
    const double t_final = outcome.steps_taken * cfg.dt;
    report.final_state = system.full_state(t_final, outcome.final_state);

    if (outcome.status == SolveStatus::completed) {
        if (report.series.empty())
            sample_error(p.t_end, outcome.final_state);
        report.final_error = report.series.back();
    } else {
        report.final_error =
            ErrorSample{t_final, std::numeric_limits<double>::quiet_NaN(), 0};
    }
    return report;
}

namespace detail {

inline std::string config_echo(const CaseReport& r)
{
    std::ostringstream os;
    os << "problem=" << problem_name(r.problem.kind)
       << " method=" << integrator_name(r.config.method)
       << " dx=" << format_g17(r.config.dx) << " dt=" << format_g17(r.config.dt)
       << " t_end=" << format_g17(r.problem.t_end)
       << " nu=" << format_g17(r.problem.params.nu)
       << " lambda=" << format_g17(r.problem.params.lambda);
    if (r.problem.kind == ProblemKind::pure_advection)
        os << " rho=" << format_g17(r.problem.rho);
    os << " x_tilde=" << format_g17(r.problem.x_tilde);
    return os.str();
}

inline std::string sibling_error_path(const std::string& out_path)
{
    std::filesystem::path p(out_path);
    const std::string ext = p.extension().string();
    p.replace_extension();
    return p.string() + "_errors" + (ext.empty() ? ".csv" : ext);
}

} // namespace detail

// Final solution profile as CSV (x, numeric, exact, |error| per node) plus
// the error-time series in a sibling "<stem>_errors<ext>" file.
inline void emit_solution_csv(const CaseReport& report, const std::string& path)
{
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("emit_solution_csv: cannot open '" + path + "'");
    out << "# " << detail::config_echo(report) << "\n";
    out << "# status="
        << (report.status == SolveStatus::completed ? "completed" : "diverged");
    if (report.status == SolveStatus::diverged)
        out << " diverged_at_step=" << report.diverged_at_step;
    out << " t_final=" << detail::format_g17(report.final_error.t) << "\n";
    out << "x,u_numeric,u_exact,abs_error\n";
    const double t = report.final_error.t;
    for (int m = 1; m <= report.grid.n_nodes; ++m) {
        const double x = report.grid.node(m);
        const double numeric = report.final_state[m - 1];
        const double exact = exact_solution(report.problem, x, t);
        out << detail::format_g17(x) << ',' << detail::format_g17(numeric) << ','
            << detail::format_g17(exact) << ','
            << detail::format_g17(std::abs(numeric - exact)) << "\n";
    }

    std::ofstream err(detail::sibling_error_path(path));
    if (!err)
        throw std::runtime_error("emit_solution_csv: cannot open '" +
                                 detail::sibling_error_path(path) + "'");
    err << "# " << detail::config_echo(report) << "\n";
    err << "t,linf,argmax_node\n";
    for (const ErrorSample& s : report.series)
        err << detail::format_g17(s.t) << ',' << detail::format_g17(s.linf)
            << ',' << s.argmax_node << "\n";
}

inline std::string format_case_summary(const CaseReport& r)
{
    std::ostringstream os;
    os << detail::config_echo(r) << "\n";
    os << "grid: " << r.grid.n_nodes << " nodes on [" << r.grid.a << ", "
       << r.grid.b << "], " << r.n_steps << " steps of dt=" << r.config.dt
       << "\n";
    if (r.status == SolveStatus::completed) {
        os << "status: completed in " << r.steps_taken << " steps\n";
        os << "L_inf error at t=" << detail::format_g17(r.final_error.t) << ": "
           << detail::format_g17(r.final_error.linf) << " (node "
           << r.final_error.argmax_node << ")\n";
    } else {
        os << "status: diverged at step " << r.diverged_at_step << " (t="
           << detail::format_g17(r.diverged_at_step * r.config.dt) << ")\n";
    }
    os << "wall time: " << r.wall_time_seconds << " s\n";
    return os.str();
}

// ---------------------------------------------------------------------------
// Reference-table reproduction

struct CellOutcome {
    IntegratorId method;
    int column = 0; // 0-based column in the reference table
    double dx = 0.0;
    double dt = 0.0;
    ReferenceCell reference;
    SolveStatus status = SolveStatus::completed;
    double linf = std::numeric_limits<double>::quiet_NaN();
    long diverged_at_step = 0;
    double wall_time_seconds = 0.0;
    bool pass = false;
    // tolerance gate: |computed - ref| / |ref|; order-of-magnitude gate:
    // max(computed/ref, ref/computed); divergence gate: NaN.
    double deviation = std::numeric_limits<double>::quiet_NaN();
};

struct TableOutcome {
    int id = 0;
    const ReferenceTable* reference = nullptr;
    std::vector<CellOutcome> cells; // row-major over the reference rows
    int n_pass = 0;
    int n_fail = 0;
    bool all_pass() const { return n_fail == 0; }
};

inline CellOutcome evaluate_cell(const ReferenceCell& ref,
                                 const CaseReport& report)
{
    CellOutcome cell;
    cell.method = report.config.method;
    cell.dx = report.config.dx;
    cell.dt = report.config.dt;
    cell.reference = ref;
    cell.status = report.status;
    cell.diverged_at_step = report.diverged_at_step;
    cell.wall_time_seconds = report.wall_time_seconds;
    if (report.status == SolveStatus::completed)
        cell.linf = report.final_error.linf;

    switch (ref.gate) {
    case GateKind::must_diverge:
        cell.pass = report.status == SolveStatus::diverged;
        break;
    case GateKind::tolerance:
        if (report.status == SolveStatus::completed) {
            cell.deviation = std::abs(cell.linf - ref.value) / std::abs(ref.value);
            cell.pass = cell.deviation <= ref.rel_tol;
        }
        break;
    case GateKind::order_of_magnitude:
        if (report.status == SolveStatus::completed && cell.linf > 0.0) {
            cell.deviation =
                std::max(cell.linf / ref.value, ref.value / cell.linf);
            cell.pass = cell.deviation <= 10.0;
        }
        break;
    }
    return cell;
}

// Run every gated cell of a reference table in row-major order.
inline TableOutcome run_reference_table(int id)
{
    const ReferenceTable& table = reference_table(id);
    TableOutcome outcome;
    outcome.id = id;
    outcome.reference = &table;
    for (const ReferenceRow& row : table.rows) {
        for (int col = 0; col < 4; ++col) {
            CaseConfig cfg;
            cfg.problem = table.problem;
            cfg.method = row.method;
            cfg.dx = table.dx[col];
            cfg.dt = table.dt[col];
            const CaseReport report = run_case(cfg);
            CellOutcome cell = evaluate_cell(row.cells[col], report);
            cell.column = col;
            (cell.pass ? outcome.n_pass : outcome.n_fail) += 1;
            outcome.cells.push_back(std::move(cell));
        }
    }
    return outcome;
}

namespace detail {

inline std::string format_sci(double v)
{
    if (std::isnan(v))
        return "-";
    if (std::isinf(v))
        return "unbounded";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4e", v);
    return buf;
}

inline std::string gate_label(const ReferenceCell& ref)
{
    switch (ref.gate) {
    case GateKind::tolerance: {
        char buf[16];
        std::snprintf(buf, sizeof buf, "%.0f%%", ref.rel_tol * 100.0);
        return buf;
    }
    case GateKind::order_of_magnitude:
        return "x10";
    case GateKind::must_diverge:
        return "diverge";
    }
    return "?";
}

inline std::string pad(std::string s, std::size_t width)
{
    if (s.size() < width)
        s.append(width - s.size(), ' ');
    return s;
}

} // namespace detail

// Aligned plain-text report. Wall time is the last column so consumers can
// strip it when comparing runs.
inline std::string format_table_report(const TableOutcome& outcome)
{
    const ReferenceTable& table = *outcome.reference;
    std::ostringstream os;
    os << "Table " << table.id << ": " << table.title << "\n";
    os << "problem: " << problem_name(table.problem)
       << "; columns are (dx, dt); L_inf over interior nodes\n\n";

    os << detail::pad("method", 8) << detail::pad("(dx,dt)", 15)
       << detail::pad("computed", 14) << detail::pad("reference", 14)
       << detail::pad("gate", 9) << detail::pad("deviation", 11)
       << detail::pad("result", 8) << "wall[s]\n";
    std::vector<const CellOutcome*> failures;
    for (const CellOutcome& cell : outcome.cells) {
        std::string computed, deviation;
        if (cell.status == SolveStatus::diverged) {
            computed = "diverged@" + std::to_string(cell.diverged_at_step);
            deviation = "-";
        } else {
            computed = detail::format_sci(cell.linf);
            if (cell.reference.gate == GateKind::tolerance && !std::isnan(cell.deviation)) {
                char buf[24];
                std::snprintf(buf, sizeof buf, "%.2f%%", cell.deviation * 100.0);
                deviation = buf;
            } else if (cell.reference.gate == GateKind::order_of_magnitude &&
                       !std::isnan(cell.deviation)) {
                char buf[24];
                std::snprintf(buf, sizeof buf, "x%.2f", cell.deviation);
                deviation = buf;
            } else {
                deviation = "-";
            }
        }
        const std::string reference = cell.reference.divergent
                                          ? "unbounded"
                                          : detail::format_sci(cell.reference.value);
        char wall[24];
        std::snprintf(wall, sizeof wall, "%.3f", cell.wall_time_seconds);
        os << detail::pad(integrator_name(cell.method), 8)
           << detail::pad(table.column_labels[cell.column], 15)
           << detail::pad(computed, 14) << detail::pad(reference, 14)
           << detail::pad(detail::gate_label(cell.reference), 9)
           << detail::pad(deviation, 11)
           << detail::pad(cell.pass ? "PASS" : "FAIL", 8) << wall << "\n";
        if (!cell.pass)
            failures.push_back(&cell);
    }

    os << "\n" << outcome.n_pass + outcome.n_fail << " gated cells: "
       << outcome.n_pass << " PASS, " << outcome.n_fail << " FAIL\n";
    for (const CellOutcome* cell : failures)
        if (cell->reference.note)
            os << "note [" << integrator_name(cell->method) << " "
               << table.column_labels[cell->column] << "]: " << cell->reference.note
               << "\n";

    if (!table.comparison_rows.empty()) {
        os << "\nreference-only rows (reported for context, not run):\n";
        for (const ComparisonRow& row : table.comparison_rows) {
            os << detail::pad(row.label, 10);
            for (double v : row.cells)
                os << detail::pad(detail::format_sci(v), 14);
            if (row.note)
                os << "  " << row.note;
            os << "\n";
        }
    }
    return os.str();
}

// Machine-readable twin of the text report; one row per gated cell.
inline std::string table_report_csv(const TableOutcome& outcome)
{
    const ReferenceTable& table = *outcome.reference;
    std::ostringstream os;
    os << "table,method,dx,dt,status,computed_linf,diverged_at_step,"
          "reference,gate,deviation,result,wall_time_s\n";
    for (const CellOutcome& cell : outcome.cells) {
        os << table.id << ',' << integrator_name(cell.method) << ','
           << detail::format_g17(cell.dx) << ',' << detail::format_g17(cell.dt)
           << ','
           << (cell.status == SolveStatus::completed ? "completed" : "diverged")
           << ','
           << (cell.status == SolveStatus::completed
                   ? detail::format_g17(cell.linf)
                   : std::string())
           << ','
           << (cell.status == SolveStatus::diverged
                   ? std::to_string(cell.diverged_at_step)
                   : std::string())
           << ','
           << (cell.reference.divergent
                   ? "unbounded"
                   : detail::format_g17(cell.reference.value))
           << ',' << detail::gate_label(cell.reference) << ','
           << (std::isnan(cell.deviation) ? std::string()
                                          : detail::format_g17(cell.deviation))
           << ',' << (cell.pass ? "PASS" : "FAIL") << ','
           << detail::format_g17(cell.wall_time_seconds) << "\n";
    }
    return os.str();
}

// Strip the wall-time column (always last) from a text or CSV report so two
// runs can be compared byte-for-byte.
inline std::string strip_wall_time(const std::string& report)
{
    const auto is_csv_data_row = [](const std::string& line) {
        const auto comma = line.find(',');
        if (comma == std::string::npos || comma == 0)
            return false;
        // CSV data rows start with the numeric table id
        return line.find_first_not_of("0123456789") == comma;
    };

    std::istringstream in(report);
    std::ostringstream out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.rfind("table,", 0) == 0) {
            if (const auto pos = line.rfind(",wall_time_s");
                pos != std::string::npos)
                line.erase(pos);
        } else if (is_csv_data_row(line)) {
            line.erase(line.rfind(','));
        } else if (const auto header = line.rfind("wall[s]");
                   header != std::string::npos) {
            line.erase(header);
        } else if (line.find("PASS") != std::string::npos ||
                   line.find("FAIL") != std::string::npos) {
            // aligned text row: wall time is the last whitespace-separated
            // token, and it is numeric (summary lines end with words)
            const auto end = line.find_last_not_of(" \t");
            const auto start = line.find_last_of(" \t", end);
            if (start != std::string::npos &&
                line.find_first_not_of("0123456789.eE+-", start + 1) ==
                    std::string::npos)
                line.erase(start);
        }
        out << line << "\n";
    }
    return out.str();
}

} // namespace sdqm
