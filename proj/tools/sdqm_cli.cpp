// Benchmark CLI: single-case solves from config files, reproduction of the
// embedded reference tables, and dx/dt convergence sweeps.
//
// Exit codes: 0 on success (all gates PASS for `table`), 1 when any gate
// fails, 2 on configuration errors.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <sdqm/sdqm.hpp>

namespace {

std::vector<double> parse_double_list(const std::string& text)
{
    std::vector<double> values;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        const double v = std::stod(item, &used);
        if (used != item.size())
            throw sdqm::ConfigError("invalid number '" + item + "' in list");
        values.push_back(v);
    }
    if (values.empty())
        throw sdqm::ConfigError("empty value list");
    return values;
}

int run_solve(const std::string& config_path)
{
    const sdqm::CaseConfig cfg = sdqm::parse_config_file(config_path);
    const sdqm::CaseReport report = sdqm::run_case(cfg);
    std::cout << sdqm::format_case_summary(report);
    if (!cfg.out.empty()) {
        sdqm::emit_solution_csv(report, cfg.out);
        std::cout << "solution written to " << cfg.out << "\n";
    }
    return 0;
}

int run_table(int id, const std::string& out_dir)
{
    const sdqm::TableOutcome outcome = sdqm::run_reference_table(id);
    const std::string text = sdqm::format_table_report(outcome);
    std::cout << text;
    if (!out_dir.empty()) {
        std::filesystem::create_directories(out_dir);
        const std::string stem =
            out_dir + "/table" + std::to_string(id) + "_report";
        std::ofstream txt(stem + ".txt");
        txt << text;
        std::ofstream csv(stem + ".csv");
        csv << sdqm::table_report_csv(outcome);
        std::cout << "reports written to " << stem << ".{txt,csv}\n";
    }
    return outcome.all_pass() ? 0 : 1;
}

int run_convergence(const std::string& problem, const std::string& method,
                    const std::string& dx_list, const std::string& dt_list,
                    double t_end, const std::string& out_path)
{
    sdqm::CaseConfig base;
    if (problem == "pure_advection")
        base.problem = sdqm::ProblemKind::pure_advection;
    else if (problem == "advection_dispersion")
        base.problem = sdqm::ProblemKind::advection_dispersion;
    else
        throw sdqm::ConfigError("unknown problem '" + problem + "'");
    if (const auto id = sdqm::parse_integrator(method))
        base.method = *id;
    else
        throw sdqm::ConfigError("unknown method '" + method + "'");
    if (t_end > 0.0)
        base.t_end = t_end;

    const std::vector<double> dxs = parse_double_list(dx_list);
    const std::vector<double> dts = parse_double_list(dt_list);

    std::ostringstream csv;
    csv << "problem,method,dx,dt,status,linf,diverged_at_step,steps,"
           "wall_time_s\n";
    std::printf("%-10s %-10s %-16s %s\n", "dx", "dt", "L_inf", "status");
    for (double dx : dxs) {
        for (double dt : dts) {
            sdqm::CaseConfig cfg = base;
            cfg.dx = dx;
            cfg.dt = dt;
            const sdqm::CaseReport r = sdqm::run_case(cfg);
            const bool ok = r.status == sdqm::SolveStatus::completed;
            if (ok)
                std::printf("%-10g %-10g %-16.6e %s\n", dx, dt,
                            r.final_error.linf, "completed");
            else
                std::printf("%-10g %-10g %-16s diverged@%ld\n", dx, dt, "-",
                            r.diverged_at_step);
            char linf[40] = "";
            if (ok)
                std::snprintf(linf, sizeof linf, "%.17g", r.final_error.linf);
            csv << problem << ',' << sdqm::integrator_name(cfg.method) << ','
                << dx << ',' << dt << ',' << (ok ? "completed" : "diverged")
                << ',' << linf << ',' << (ok ? 0L : r.diverged_at_step) << ','
                << r.steps_taken << ',' << r.wall_time_seconds << "\n";
        }
    }
    if (!out_path.empty()) {
        std::ofstream out(out_path);
        if (!out)
            throw std::runtime_error("cannot open '" + out_path + "'");
        out << csv.str();
        std::cout << "grid written to " << out_path << "\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Sinc differential quadrature benchmark for the 1D "
                 "advection-dispersion equation"};
    app.require_subcommand(1);

    std::string config_path;
    CLI::App* solve = app.add_subcommand(
        "solve", "run one case described by a key=value config file");
    solve->add_option("--config", config_path, "path to config file")
        ->required();

    int table_id = 1;
    std::string table_out;
    CLI::App* table = app.add_subcommand(
        "table", "reproduce an embedded reference table and gate the results");
    table->add_option("--id", table_id, "table id (1 or 2)")
        ->required()
        ->check(CLI::Range(1, 2));
    table->add_option("--out", table_out,
                      "directory for the text and CSV reports");

    std::string problem, method, dx_list, dt_list, conv_out;
    double t_end = 0.0;
    CLI::App* conv = app.add_subcommand(
        "convergence", "sweep a dx/dt grid and report final errors");
    conv->add_option("--problem", problem,
                     "pure_advection or advection_dispersion")
        ->required();
    conv->add_option("--method", method, "integrator name")->required();
    conv->add_option("--dx-list", dx_list, "comma-separated dx values")
        ->required();
    conv->add_option("--dt-list", dt_list, "comma-separated dt values")
        ->required();
    conv->add_option("--t-end", t_end, "override the problem's end time");
    conv->add_option("--out", conv_out, "CSV output path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e); // --help output, exits 0
    } catch (const CLI::ParseError& e) {
        app.exit(e); // prints the usage message
        return 2;    // command-line mistakes are configuration errors
    }

    try {
        if (solve->parsed())
            return run_solve(config_path);
        if (table->parsed())
            return run_table(table_id, table_out);
        return run_convergence(problem, method, dx_list, dt_list, t_end,
                               conv_out);
    } catch (const sdqm::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
