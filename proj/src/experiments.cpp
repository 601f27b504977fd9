#include "iwg/experiments.hpp"

#include "iwg/errors.hpp"

#include <cmath>
#include <future>
#include <limits>

namespace iwg {

PolygonalMesh MeshLevel::load() const
{
    if (const auto* n = std::get_if<std::size_t>(&source))
        return generate_uniform_square_mesh(*n);
    return load_polygon_mesh_file(std::get<std::string>(source));
}

LevelResult solve_level(const ProblemSpec& problem, const PolygonalMesh& mesh, long inv_h,
                        const ExperimentOptions& options)
{
    DiscreteSpace space(mesh, classify_mesh(mesh, problem.level, problem.beta));
    const ScalarField u = problem.exact_field();

    AssemblyOptions assembly;
    assembly.lambda = options.lambda;
    assembly.quad_degree = options.quad_degree;
    const GlobalSystem system = assemble(space, problem.source_field(), u, assembly);
    const Eigen::VectorXd x = solve(system.matrix, system.rhs, options.solver);
    const WgFunction uh = system.expand(space, x);
    const WgFunction quh = project_Qh(space, u, options.error_quad_degree);
    const WgFunction diff = uh - quh;

    LevelResult r;
    r.h = mesh.mesh_size();
    r.row.inv_h = inv_h > 0 ? inv_h : std::lround(1.0 / r.h);
    r.row.h1_error = discrete_h1_seminorm(space, diff, options.lambda);
    r.row.l2_error = l2_norm_v0(space, diff);
    r.energy_error = energy_norm(space, diff, options.lambda);
    r.num_cells = mesh.num_cells();
    for (const ElementCut& cut : space.cuts)
        r.num_interface_cells += cut.is_interface();
    r.num_unknowns = system.free_dofs.size();
    return r;
}

ConvergenceResult run_convergence(const ProblemSpec& problem, const std::vector<MeshLevel>& levels,
                                  const ExperimentOptions& options)
{
    if (options.validate_problem) {
        const ProblemCheck check = validate_problem(problem);
        if (!check.passed)
            throw Error("problem '" + problem.name + "' failed validation: value jump " +
                        std::to_string(check.max_value_jump) + ", flux jump " +
                        std::to_string(check.max_flux_jump) + ", source mismatch " +
                        std::to_string(check.max_source_mismatch));
    }

    auto run_one = [&](const MeshLevel& level) {
        return solve_level(problem, level.load(), level.inv_h, options);
    };

    ConvergenceResult result;
    if (options.parallel_levels) {
        std::vector<std::future<LevelResult>> pending;
        for (const MeshLevel& level : levels)
            pending.push_back(std::async(std::launch::async, run_one, std::cref(level)));
        for (auto& p : pending)
            result.levels.push_back(p.get());
    } else {
        for (const MeshLevel& level : levels)
            result.levels.push_back(run_one(level));
    }

    std::vector<double> h, h1, l2;
    for (const LevelResult& level : result.levels) {
        result.rows.push_back(level.row);
        h.push_back(1.0 / static_cast<double>(level.row.inv_h));
        h1.push_back(level.row.h1_error);
        l2.push_back(level.row.l2_error);
    }
    result.rows = convergence_orders(std::move(result.rows));
    if (h.size() >= 2) {
        result.h1_slope = least_squares_slope(h, h1);
        result.l2_slope = least_squares_slope(h, l2);
    } else {
        result.h1_slope = result.l2_slope = std::numeric_limits<double>::quiet_NaN();
    }
    return result;
}

} // namespace iwg
