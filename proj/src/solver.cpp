#include "iwg/solver.hpp"

#include "iwg/errors.hpp"

#include <Eigen/OrderingMethods>
#include <Eigen/SparseCholesky>

#include <algorithm>
#include <cmath>

namespace iwg {

SparseSymmetric SparseSymmetric::from_triplets(std::size_t n, std::vector<Triplet> entries)
{
    std::stable_sort(entries.begin(), entries.end(), [](const Triplet& a, const Triplet& b) {
        return a.row != b.row ? a.row < b.row : a.col < b.col;
    });
    SparseSymmetric m;
    m.n_ = n;
    m.row_ptr_.assign(n + 1, 0);
    m.cols_.reserve(entries.size());
    m.values_.reserve(entries.size());

    std::size_t i = 0;
    while (i < entries.size()) {
        const std::size_t row = entries[i].row;
        const std::size_t col = entries[i].col;
        double sum = 0.0;
        for (; i < entries.size() && entries[i].row == row && entries[i].col == col; ++i)
            sum += entries[i].value;
        if (sum == 0.0)
            continue;
        m.cols_.push_back(col);
        m.values_.push_back(sum);
        ++m.row_ptr_[row + 1];
    }
    for (std::size_t r = 0; r < n; ++r)
        m.row_ptr_[r + 1] += m.row_ptr_[r];
    return m;
}

double SparseSymmetric::at(std::size_t row, std::size_t col) const
{
    const auto begin = cols_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[row]);
    const auto end = cols_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[row + 1]);
    const auto it = std::lower_bound(begin, end, col);
    return it != end && *it == col ? values_[static_cast<std::size_t>(it - cols_.begin())] : 0.0;
}

Eigen::VectorXd SparseSymmetric::multiply(const Eigen::VectorXd& x) const
{
    Eigen::VectorXd y = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n_));
    for (std::size_t r = 0; r < n_; ++r) {
        double sum = 0.0;
        for (std::size_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k)
            sum += values_[k] * x[static_cast<Eigen::Index>(cols_[k])];
        y[static_cast<Eigen::Index>(r)] = sum;
    }
    return y;
}

Eigen::VectorXd SparseSymmetric::diagonal() const
{
    Eigen::VectorXd d(static_cast<Eigen::Index>(n_));
    for (std::size_t r = 0; r < n_; ++r)
        d[static_cast<Eigen::Index>(r)] = at(r, r);
    return d;
}

double SparseSymmetric::max_abs() const
{
    double m = 0.0;
    for (double v : values_)
        m = std::max(m, std::abs(v));
    return m;
}

double SparseSymmetric::symmetry_error() const
{
    double err = 0.0;
    for (std::size_t r = 0; r < n_; ++r)
        for (std::size_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k)
            err = std::max(err, std::abs(values_[k] - at(cols_[k], r)));
    return err;
}

Eigen::SparseMatrix<double> SparseSymmetric::to_eigen() const
{
    std::vector<Eigen::Triplet<double>> t;
    t.reserve(values_.size());
    for (std::size_t r = 0; r < n_; ++r)
        for (std::size_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k)
            t.emplace_back(static_cast<int>(r), static_cast<int>(cols_[k]), values_[k]);
    Eigen::SparseMatrix<double> m(static_cast<Eigen::Index>(n_), static_cast<Eigen::Index>(n_));
    m.setFromTriplets(t.begin(), t.end());
    return m;
}

Eigen::MatrixXd SparseSymmetric::to_dense() const
{
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n_), static_cast<Eigen::Index>(n_));
    for (std::size_t r = 0; r < n_; ++r)
        for (std::size_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k)
            d(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(cols_[k])) = values_[k];
    return d;
}

Eigen::VectorXd solve_cholesky(const SparseSymmetric& a, const Eigen::VectorXd& b)
{
    if (a.size() == 0)
        return Eigen::VectorXd(0);
    Eigen::SimplicialLLT<Eigen::SparseMatrix<double>, Eigen::Lower, Eigen::AMDOrdering<int>> llt;
    llt.compute(a.to_eigen());
    if (llt.info() != Eigen::Success)
        throw NotPositiveDefinite("Cholesky factorization failed: matrix is not positive definite");
    Eigen::VectorXd x = llt.solve(b);
    if (llt.info() != Eigen::Success || !x.allFinite())
        throw NotPositiveDefinite("Cholesky solve failed");
    return x;
}

PcgResult solve_pcg(const SparseSymmetric& a, const Eigen::VectorXd& b, double tol, int max_iterations)
{
    const Eigen::VectorXd diag = a.diagonal();
    if (a.size() > 0 && !(diag.minCoeff() > 0.0))
        throw NotPositiveDefinite("Jacobi preconditioner needs a positive diagonal");
    const Eigen::VectorXd inv_diag = diag.cwiseInverse();

    PcgResult result;
    result.x = Eigen::VectorXd::Zero(b.size());
    const double b_norm = b.norm();
    if (b_norm == 0.0)
        return result;

    Eigen::VectorXd r = b;
    Eigen::VectorXd z = inv_diag.cwiseProduct(r);
    Eigen::VectorXd p = z;
    double rz = r.dot(z);
    for (int it = 1; it <= max_iterations; ++it) {
        const Eigen::VectorXd ap = a.multiply(p);
        const double curvature = p.dot(ap);
        if (!(curvature > 0.0))
            throw NotPositiveDefinite("conjugate gradients met non-positive curvature");
        const double alpha = rz / curvature;
        result.x += alpha * p;
        r -= alpha * ap;
        result.iterations = it;
        result.relative_residual = r.norm() / b_norm;
        bool restart = false;
        if (result.relative_residual <= tol) {
            // The recursive residual drifts from b - Ax near round-off;
            // accept only when the true residual agrees.
            r = b - a.multiply(result.x);
            result.relative_residual = r.norm() / b_norm;
            if (result.relative_residual <= tol)
                return result;
            restart = true;
        }
        z = inv_diag.cwiseProduct(r);
        const double rz_next = r.dot(z);
        p = restart ? z : Eigen::VectorXd(z + (rz_next / rz) * p);
        rz = rz_next;
    }
    throw MaxIterations(max_iterations, result.relative_residual);
}

SolverKind parse_solver_kind(const std::string& name)
{
    if (name == "auto")
        return SolverKind::automatic;
    if (name == "cholesky")
        return SolverKind::cholesky;
    if (name == "cg")
        return SolverKind::cg;
    throw ParseError("unknown solver '" + name + "' (expected cholesky, cg or auto)");
}

Eigen::VectorXd solve(const SparseSymmetric& a, const Eigen::VectorXd& b, const SolverOptions& options)
{
    SolverKind kind = options.kind;
    if (kind == SolverKind::automatic)
        kind = a.size() <= options.direct_limit ? SolverKind::cholesky : SolverKind::cg;
    if (kind == SolverKind::cholesky)
        return solve_cholesky(a, b);
    const int maxit = options.max_iterations > 0 ? options.max_iterations
                                                 : static_cast<int>(10 * std::max<std::size_t>(a.size(), 10));
    return solve_pcg(a, b, options.tol, maxit).x;
}

} // namespace iwg
