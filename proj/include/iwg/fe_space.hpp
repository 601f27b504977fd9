#pragma once

#include "iwg/interface_geometry.hpp"
#include "iwg/mesh.hpp"
#include "iwg/quadrature.hpp"

#include <Eigen/Core>

#include <array>
#include <optional>
#include <vector>

namespace iwg {

/// Broken-linear basis on one element:
///   phi1 = 1,  phi2 = t.(x - x0),  phi3 = n.(x - x0) / s,
/// with s = beta_bar on the side of x for interface cells and s = 1 (x0 the
/// centroid, t = e_x, n = e_y) otherwise.
struct ElementBasis {
    Vec2 origin = Vec2::Zero();
    Vec2 tangent{1.0, 0.0};
    Vec2 normal{0.0, 1.0};
    std::array<double, 2> normal_scale{1.0, 1.0};  // indexed by side_index

    std::array<double, 3> values(const Vec2& x, Side side) const
    {
        const Vec2 d = x - origin;
        return {1.0, tangent.dot(d), normal.dot(d) / normal_scale[side_index(side)]};
    }

    std::array<Vec2, 3> gradients(Side side) const
    {
        return {Vec2::Zero(), tangent, normal / normal_scale[side_index(side)]};
    }

    double evaluate(const Eigen::Vector3d& coeffs, const Vec2& x, Side side) const
    {
        const auto v = values(x, side);
        return coeffs[0] * v[0] + coeffs[1] * v[1] + coeffs[2] * v[2];
    }

    Vec2 gradient(const Eigen::Vector3d& coeffs, Side side) const
    {
        return coeffs[1] * tangent + coeffs[2] * normal / normal_scale[side_index(side)];
    }
};

ElementBasis make_element_basis(const ElementCut& cut);

/// Basis values at `x`, using the chord half-plane to pick the branch.
std::array<double, 3> eval_basis(const ElementBasis& basis, const ElementCut& cut, const Vec2& x);
std::array<Vec2, 3> eval_basis_grad(const ElementBasis& basis, Side side);

/// Runs `f(point, weight, side)` over a quadrature of every sub-region.
template <class F>
void for_each_quadrature_point(const ElementCut& cut, int degree, F&& f)
{
    for (const SubRegion& region : cut.regions) {
        const QuadratureRule rule = polygon_quadrature(region.polygon, degree);
        for (std::size_t q = 0; q < rule.size(); ++q)
            f(rule.points[q], rule.weights[q], region.side);
    }
}

/// M_ij = int_T phi_i phi_j, split over the sub-regions.
Eigen::Matrix3d element_mass_matrix(const ElementCut& cut, const ElementBasis& basis, int degree);

/// L2 projection onto the broken-linear space of the element.
/// Throws SingularMatrix on a degenerate mass matrix.
Eigen::Vector3d project_Q0(const ElementCut& cut, const ElementBasis& basis, const ScalarField& u,
                           int degree);

/// Averages of phi_1..phi_3 over a cell edge, integrating each piece with
/// its own branch.
std::array<double, 3> basis_edge_averages(const ElementBasis& basis, const LocalEdgeSplit& edge);

/// Average of v0 = sum c_i phi_i over a cell edge.
double project_Qpartial(const ElementBasis& basis, const LocalEdgeSplit& edge,
                        const Eigen::Vector3d& coeffs);

/// Average of u over the segment [a, b], splitting the integral at the
/// parameter `split` when given.
double project_Qpartial(const Vec2& a, const Vec2& b, const ScalarField& u,
                        std::optional<double> split = std::nullopt);

/// Global numbering: three interior DOFs per cell (cell-major) followed by
/// one DOF per edge in edge order.
class DofMap {
public:
    explicit DofMap(const PolygonalMesh& mesh);

    std::size_t num_cells() const { return num_cells_; }
    std::size_t num_edges() const { return is_boundary_.size(); }
    std::size_t num_interior_dofs() const { return 3 * num_cells_; }
    std::size_t num_edge_dofs() const { return is_boundary_.size(); }
    std::size_t num_dofs() const { return num_interior_dofs() + num_edge_dofs(); }
    std::size_t num_boundary_dofs() const { return num_boundary_; }

    std::size_t interior_dof(std::size_t cell, int i) const { return 3 * cell + static_cast<std::size_t>(i); }
    std::size_t edge_dof(std::size_t edge) const { return num_interior_dofs() + edge; }
    bool is_boundary_dof(std::size_t dof) const
    {
        return dof >= num_interior_dofs() && is_boundary_[dof - num_interior_dofs()];
    }

    /// Global DOFs of a cell in local order: phi1..phi3, then edges in loop order.
    std::vector<std::size_t> local_dofs(const PolygonalMesh& mesh, std::size_t cell) const;

private:
    std::size_t num_cells_;
    std::vector<bool> is_boundary_;
    std::size_t num_boundary_ = 0;
};

DofMap build_dof_map(const PolygonalMesh& mesh);

/// v = {v0, v_partial}: element coefficients and edge values.
struct WgFunction {
    std::vector<Eigen::Vector3d> interior;
    std::vector<double> edge;

    static WgFunction zero(const DofMap& dofs);
    Eigen::VectorXd to_vector(const DofMap& dofs) const;
    static WgFunction from_vector(const DofMap& dofs, const Eigen::VectorXd& v);
};

WgFunction operator-(const WgFunction& a, const WgFunction& b);

/// Mesh, element cuts, bases and DOF numbering for one discretization.
struct DiscreteSpace {
    const PolygonalMesh* mesh;
    std::vector<ElementCut> cuts;
    std::vector<ElementBasis> bases;
    DofMap dofs;

    DiscreteSpace(const PolygonalMesh& m, std::vector<ElementCut> c);

    /// Interface cut parameter along the stored orientation of a global
    /// edge, taken from the adjacent cells' cuts.
    std::optional<double> edge_split(std::size_t edge) const;
};

/// Q_h u = {Q0 u, Q_partial u}; edge values come from u directly.
WgFunction project_Qh(const DiscreteSpace& space, const ScalarField& u, int degree);

} // namespace iwg
