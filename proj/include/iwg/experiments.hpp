#pragma once

#include "iwg/error_norms.hpp"
#include "iwg/problems.hpp"
#include "iwg/solver.hpp"
#include "iwg/wg_operator.hpp"

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace iwg {

/// A refinement level: either a uniform n x n square mesh or a mesh file.
struct MeshLevel {
    long inv_h = 0;
    std::variant<std::size_t, std::string> source;

    static MeshLevel uniform(std::size_t n) { return {static_cast<long>(n), n}; }
    static MeshLevel file(std::string path, long inv_h = 0) { return {inv_h, std::move(path)}; }

    PolygonalMesh load() const;
};

struct ExperimentOptions {
    double lambda = 1.0;
    int quad_degree = 4;
    int error_quad_degree = 6;
    SolverOptions solver;
    bool parallel_levels = false;
    bool validate_problem = true;
};

struct LevelResult {
    ErrorRow row;
    double h = 0.0;  // largest cell diameter
    std::size_t num_cells = 0;
    std::size_t num_interface_cells = 0;
    std::size_t num_unknowns = 0;
    double energy_error = 0.0;  // |||u_h - Q_h u|||
};

struct ConvergenceResult {
    std::vector<LevelResult> levels;
    std::vector<ErrorRow> rows;
    double h1_slope = 0.0;  // least squares in log(h); NaN with fewer than two levels
    double l2_slope = 0.0;
};

/// Classifies, assembles, solves and measures one level.
LevelResult solve_level(const ProblemSpec& problem, const PolygonalMesh& mesh, long inv_h,
                        const ExperimentOptions& options);

/// Runs every level (validating the problem first) and computes orders.
/// Slopes are fitted against h = 1/inv_h.
ConvergenceResult run_convergence(const ProblemSpec& problem, const std::vector<MeshLevel>& levels,
                                  const ExperimentOptions& options);

} // namespace iwg
