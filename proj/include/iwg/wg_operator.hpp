#pragma once

#include "iwg/fe_space.hpp"
#include "iwg/solver.hpp"

#include <Eigen/Core>

#include <vector>

namespace iwg {

/// Weak gradient of an element in the basis {grad phi2, grad phi3}.
/// Column j of `map` is the coefficient pair of the weak gradient of the
/// j-th local unit DOF (phi1..phi3, then edges in loop order).
struct LocalWeakGradient {
    Eigen::Matrix2d gram;  // int_T beta_bar grad phi_i . grad phi_j, i, j in {2, 3}
    Eigen::Matrix<double, 2, Eigen::Dynamic> map;

    Eigen::Index num_local_dofs() const { return map.cols(); }
};

/// Throws SingularMatrix when the Gram matrix is not positive definite.
LocalWeakGradient local_weak_gradient(const ElementCut& cut, const ElementBasis& basis);

/// G^T M G.
Eigen::MatrixXd local_consistency_matrix(const LocalWeakGradient& lwg);

/// lambda / h_T * sum_e |e| w_e w_e^T with w_e . v = Q_partial v0 - v_partial on e.
Eigen::MatrixXd local_stabilization_matrix(const ElementCut& cut, const ElementBasis& basis, double lambda);

Eigen::MatrixXd local_stiffness(const ElementCut& cut, const ElementBasis& basis,
                                const LocalWeakGradient& lwg, double lambda);

/// b_i = int_T f phi_i, split over the sub-regions.
Eigen::Vector3d local_load(const ElementCut& cut, const ElementBasis& basis, const ScalarField& f,
                           int degree);

struct AssemblyOptions {
    double lambda = 1.0;
    int quad_degree = 4;
};

/// Reduced system over the free DOFs after eliminating the boundary edges.
struct GlobalSystem {
    SparseSymmetric matrix;
    Eigen::VectorXd rhs;
    std::vector<std::size_t> free_dofs;          // global index of each free unknown
    std::vector<std::ptrdiff_t> free_index;      // global -> free (-1 when fixed)
    Eigen::VectorXd dirichlet;                   // full-length; boundary-edge values

    /// Full coefficient vector from the free unknowns.
    WgFunction expand(const DiscreteSpace& space, const Eigen::VectorXd& free_values) const;
};

/// Matrix of a_s over all DOFs, without boundary elimination.
SparseSymmetric assemble_full_matrix(const DiscreteSpace& space, double lambda);

/// Scatters local stiffness and load, fixes boundary edge DOFs to
/// Q_partial g and moves their columns to the right-hand side.
GlobalSystem assemble(const DiscreteSpace& space, const ScalarField& f, const ScalarField& g,
                      const AssemblyOptions& options);

} // namespace iwg
