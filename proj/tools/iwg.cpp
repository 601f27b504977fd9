// Command-line front end: solve one level, run a convergence study, or
// report mesh quality.

#include "iwg/errors.hpp"
#include "iwg/experiments.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

namespace {

enum ExitCode { ok = 0, config_error = 2, numerical_error = 3, cut_topology_error = 4 };

struct ProblemFlags {
    std::string example = "circle";
    double beta_plus = 1.0;
    double beta_minus = 10.0;
    bool beta_plus_set = false;
    bool beta_minus_set = false;
};

struct RunFlags {
    std::string mesh = "m1";
    std::vector<std::string> mesh_files;
    std::vector<long> levels;
    long max_level = 64;
    double lambda = 1.0;
    int quad_degree = 4;
    std::string solver = "auto";
    double tol = 1e-12;
    std::string out;
    bool parallel_levels = false;
};

void add_problem_flags(CLI::App& cmd, ProblemFlags& p)
{
    cmd.add_option("--example", p.example, "Benchmark problem")
        ->check(CLI::IsMember({"circle", "sharp", "variable"}));
    cmd.add_option("--beta-plus", p.beta_plus, "Coefficient on the + side (circle, sharp)");
    cmd.add_option("--beta-minus", p.beta_minus, "Coefficient on the - side (circle, sharp)");
}

void add_run_flags(CLI::App& cmd, RunFlags& r)
{
    cmd.add_option("--mesh", r.mesh, "Mesh family (m1: uniform squares)")->check(CLI::IsMember({"m1"}));
    cmd.add_option("--mesh-file", r.mesh_files, "Polygon mesh file(s), one per level");
    cmd.add_option("--lambda", r.lambda, "Stabilization parameter")->check(CLI::PositiveNumber);
    cmd.add_option("--quad-degree", r.quad_degree, "Quadrature degree for assembly")->check(CLI::Range(2, 6));
    cmd.add_option("--solver", r.solver, "Linear solver")->check(CLI::IsMember({"auto", "cholesky", "cg"}));
    cmd.add_option("--tol", r.tol, "Relative residual tolerance for CG")->check(CLI::PositiveNumber);
    cmd.add_option("--out", r.out, "CSV output path");
}

iwg::ProblemSpec build_problem(const ProblemFlags& p, const CLI::App& cmd)
{
    double bp = p.beta_plus;
    double bm = p.beta_minus;
    if (p.example == "sharp") {
        if (cmd.count("--beta-plus") == 0)
            bp = 1000.0;
        if (cmd.count("--beta-minus") == 0)
            bm = 1.0;
    } else if (p.example == "variable" && (cmd.count("--beta-plus") || cmd.count("--beta-minus"))) {
        throw iwg::ParseError("the variable-coefficient example has fixed coefficients");
    }
    return iwg::make_problem(p.example, bp, bm);
}

iwg::ExperimentOptions build_options(const RunFlags& r)
{
    iwg::ExperimentOptions o;
    o.lambda = r.lambda;
    o.quad_degree = r.quad_degree;
    o.solver.kind = iwg::parse_solver_kind(r.solver);
    o.solver.tol = r.tol;
    o.parallel_levels = r.parallel_levels;
    return o;
}

std::vector<iwg::MeshLevel> build_levels(const RunFlags& r)
{
    std::vector<iwg::MeshLevel> levels;
    if (!r.mesh_files.empty()) {
        if (!r.levels.empty() && r.levels.size() != r.mesh_files.size())
            throw iwg::ParseError("--levels must label every --mesh-file");
        for (std::size_t i = 0; i < r.mesh_files.size(); ++i)
            levels.push_back(iwg::MeshLevel::file(r.mesh_files[i], r.levels.empty() ? 0 : r.levels[i]));
        return levels;
    }
    for (long n : r.levels)
        if (n <= r.max_level)
            levels.push_back(iwg::MeshLevel::uniform(static_cast<std::size_t>(n)));
    if (levels.empty())
        throw iwg::ParseError("no refinement level at or below --max-level");
    return levels;
}

void emit(const iwg::ConvergenceResult& result, const RunFlags& r)
{
    iwg::write_error_table(std::cout, result.rows);
    if (result.rows.size() >= 2)
        std::cout << std::fixed << std::setprecision(4) << "least-squares slope: h1 " << result.h1_slope
                  << ", l2 " << result.l2_slope << '\n';
    if (!r.out.empty()) {
        std::ofstream csv(r.out);
        if (!csv)
            throw iwg::ParseError("cannot write '" + r.out + "'");
        iwg::write_error_csv(csv, result.rows);
    }
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Immersed weak Galerkin solver for elliptic interface problems"};
    app.require_subcommand(1);

    ProblemFlags problem_flags;
    RunFlags solve_flags;
    solve_flags.levels = {16};
    auto* solve_cmd = app.add_subcommand("solve", "Solve on a single mesh and report errors");
    add_problem_flags(*solve_cmd, problem_flags);
    add_run_flags(*solve_cmd, solve_flags);
    long solve_n = 16;
    solve_cmd->add_option("--n", solve_n, "Cells per side of the uniform mesh")->check(CLI::PositiveNumber);

    ProblemFlags conv_problem_flags;
    RunFlags conv_flags;
    conv_flags.levels = {8, 16, 32, 64, 128, 256};
    auto* conv_cmd = app.add_subcommand("convergence", "Run a refinement study");
    add_problem_flags(*conv_cmd, conv_problem_flags);
    add_run_flags(*conv_cmd, conv_flags);
    conv_cmd->add_option("--levels", conv_flags.levels, "Values of 1/h (or labels for mesh files)")
        ->delimiter(',');
    conv_cmd->add_option("--max-level", conv_flags.max_level, "Skip uniform levels above this 1/h");
    conv_cmd->add_flag("--parallel-levels", conv_flags.parallel_levels, "Run levels concurrently");

    std::string mesh_path;
    double rho = 0.1;
    auto* validate_cmd = app.add_subcommand("validate-mesh", "Report mesh shape-regularity diagnostics");
    validate_cmd->add_option("--mesh-file", mesh_path, "Polygon mesh file")->required();
    validate_cmd->add_option("--rho", rho, "Regularity threshold in (0,1)")->check(CLI::Range(0.0, 1.0));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? ok : config_error;
    }

    try {
        if (*solve_cmd) {
            RunFlags r = solve_flags;
            if (r.mesh_files.size() > 1)
                throw iwg::ParseError("solve takes a single --mesh-file");
            r.levels = {solve_n};
            r.max_level = solve_n;
            const iwg::ProblemSpec problem = build_problem(problem_flags, *solve_cmd);
            const iwg::ConvergenceResult result =
                iwg::run_convergence(problem, build_levels(r), build_options(r));
            const iwg::LevelResult& level = result.levels.front();
            std::cout << "example " << problem.name << ": " << level.num_cells << " cells, "
                      << level.num_interface_cells << " interface cells, " << level.num_unknowns
                      << " unknowns\n";
            emit(result, r);
        } else if (*conv_cmd) {
            const iwg::ProblemSpec problem = build_problem(conv_problem_flags, *conv_cmd);
            const iwg::ConvergenceResult result =
                iwg::run_convergence(problem, build_levels(conv_flags), build_options(conv_flags));
            emit(result, conv_flags);
        } else if (*validate_cmd) {
            const iwg::PolygonalMesh mesh = iwg::load_polygon_mesh_file(mesh_path);
            const iwg::MeshQualityReport report = iwg::validate_mesh(mesh, rho);
            std::cout << mesh.num_vertices() << " vertices, " << mesh.num_cells() << " cells, "
                      << mesh.num_edges() << " edges (" << mesh.num_boundary_edges() << " boundary)\n"
                      << "h = " << mesh.mesh_size() << '\n'
                      << "min |e|/h_T = " << report.min_edge_ratio << ", min r/h_T = " << report.min_ball_ratio
                      << '\n'
                      << "cells with |e|/h_T < rho: " << report.edge_violations.size() << '\n'
                      << "cells with r/h_T < rho: " << report.ball_violations.size() << '\n';
            for (std::size_t c : report.edge_violations)
                std::cout << "  edge-ratio violation: cell " << c << " (" << report.cells[c].edge_ratio << ")\n";
        }
    } catch (const iwg::CutTopologyError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return cut_topology_error;
    } catch (const iwg::NumericalError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return numerical_error;
    } catch (const iwg::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return config_error;
    }
    return ok;
}
