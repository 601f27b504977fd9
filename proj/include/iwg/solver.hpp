#pragma once

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include <cstddef>
#include <string>
#include <vector>

namespace iwg {

struct Triplet {
    std::size_t row;
    std::size_t col;
    double value;
};

/// Compressed-row symmetric matrix storing both triangles.
class SparseSymmetric {
public:
    SparseSymmetric() = default;

    /// Sums duplicate entries in insertion order and drops exact zeros.
    static SparseSymmetric from_triplets(std::size_t n, std::vector<Triplet> entries);

    std::size_t size() const { return n_; }
    std::size_t nonzeros() const { return values_.size(); }
    const std::vector<std::size_t>& row_offsets() const { return row_ptr_; }
    const std::vector<std::size_t>& columns() const { return cols_; }
    const std::vector<double>& values() const { return values_; }

    double at(std::size_t row, std::size_t col) const;
    Eigen::VectorXd multiply(const Eigen::VectorXd& x) const;
    Eigen::VectorXd diagonal() const;

    double max_abs() const;
    /// max |A_ij - A_ji| (missing entries count as zero).
    double symmetry_error() const;

    Eigen::SparseMatrix<double> to_eigen() const;
    Eigen::MatrixXd to_dense() const;

private:
    std::size_t n_ = 0;
    std::vector<std::size_t> row_ptr_{0};
    std::vector<std::size_t> cols_;
    std::vector<double> values_;
};

/// Sparse Cholesky with a fill-reducing ordering. Throws NotPositiveDefinite.
Eigen::VectorXd solve_cholesky(const SparseSymmetric& a, const Eigen::VectorXd& b);

struct PcgResult {
    Eigen::VectorXd x;
    int iterations = 0;
    double relative_residual = 0.0;
};

/// Jacobi-preconditioned conjugate gradients from a zero initial guess.
/// Throws MaxIterations when the relative residual stays above `tol`, and
/// NotPositiveDefinite on a non-positive diagonal or curvature.
PcgResult solve_pcg(const SparseSymmetric& a, const Eigen::VectorXd& b, double tol, int max_iterations);

enum class SolverKind { automatic, cholesky, cg };

SolverKind parse_solver_kind(const std::string& name);

struct SolverOptions {
    SolverKind kind = SolverKind::automatic;
    double tol = 1e-12;
    int max_iterations = 0;            // 0: 10 * n
    std::size_t direct_limit = 200000; // automatic switches to CG above this size
};

Eigen::VectorXd solve(const SparseSymmetric& a, const Eigen::VectorXd& b, const SolverOptions& options);

} // namespace iwg
