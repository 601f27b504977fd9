#include "iwg/fe_space.hpp"

#include "iwg/errors.hpp"

#include <Eigen/Cholesky>

#include <cmath>

namespace iwg {

ElementBasis make_element_basis(const ElementCut& cut)
{
    ElementBasis basis;
    if (!cut.chord) {
        basis.origin = cut.centroid;
        return basis;
    }
    basis.origin = cut.chord->midpoint;
    basis.tangent = cut.chord->tangent;
    basis.normal = cut.chord->normal;
    basis.normal_scale = {cut.beta(Side::plus), cut.beta(Side::minus)};
    return basis;
}

std::array<double, 3> eval_basis(const ElementBasis& basis, const ElementCut& cut, const Vec2& x)
{
    return basis.values(x, side_of_point(cut, x));
}

std::array<Vec2, 3> eval_basis_grad(const ElementBasis& basis, Side side)
{
    return basis.gradients(side);
}

Eigen::Matrix3d element_mass_matrix(const ElementCut& cut, const ElementBasis& basis, int degree)
{
    Eigen::Matrix3d mass = Eigen::Matrix3d::Zero();
    for_each_quadrature_point(cut, degree, [&](const Vec2& x, double w, Side side) {
        const auto phi = basis.values(x, side);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                mass(i, j) += w * phi[i] * phi[j];
    });
    return mass;
}

Eigen::Vector3d project_Q0(const ElementCut& cut, const ElementBasis& basis, const ScalarField& u,
                           int degree)
{
    Eigen::Matrix3d mass = Eigen::Matrix3d::Zero();
    Eigen::Vector3d load = Eigen::Vector3d::Zero();
    for_each_quadrature_point(cut, degree, [&](const Vec2& x, double w, Side side) {
        const auto phi = basis.values(x, side);
        const double ux = u(x);
        for (int i = 0; i < 3; ++i) {
            load[i] += w * ux * phi[i];
            for (int j = 0; j < 3; ++j)
                mass(i, j) += w * phi[i] * phi[j];
        }
    });
    Eigen::LLT<Eigen::Matrix3d> llt(mass);
    if (llt.info() != Eigen::Success || !(llt.matrixLLT().diagonal().minCoeff() > 0.0))
        throw SingularMatrix("element " + std::to_string(cut.cell) + ": singular mass matrix");
    return llt.solve(load);
}

std::array<double, 3> basis_edge_averages(const ElementBasis& basis, const LocalEdgeSplit& edge)
{
    std::array<double, 3> avg{0.0, 0.0, 0.0};
    for (int p = 0; p < edge.num_pieces; ++p) {
        const EdgePiece& piece = edge.pieces[p];
        const double len = (piece.b - piece.a).norm();
        // Linear on each piece: the midpoint value is exact.
        const auto phi = basis.values(0.5 * (piece.a + piece.b), piece.side);
        for (int i = 0; i < 3; ++i)
            avg[i] += len * phi[i];
    }
    const double total = edge.length();
    for (double& a : avg)
        a /= total;
    return avg;
}

double project_Qpartial(const ElementBasis& basis, const LocalEdgeSplit& edge,
                        const Eigen::Vector3d& coeffs)
{
    const auto avg = basis_edge_averages(basis, edge);
    return coeffs[0] * avg[0] + coeffs[1] * avg[1] + coeffs[2] * avg[2];
}

double project_Qpartial(const Vec2& a, const Vec2& b, const ScalarField& u,
                        std::optional<double> split)
{
    constexpr int points = 5;
    const LineRule& rule = gauss_legendre(points);
    auto integrate = [&](double t0, double t1) {
        double sum = 0.0;
        for (int q = 0; q < points; ++q) {
            const double t = t0 + (t1 - t0) * rule.nodes[q];
            sum += rule.weights[q] * u((1.0 - t) * a + t * b);
        }
        return (t1 - t0) * sum;
    };
    if (split && *split > 0.0 && *split < 1.0)
        return integrate(0.0, *split) + integrate(*split, 1.0);
    return integrate(0.0, 1.0);
}

DofMap::DofMap(const PolygonalMesh& mesh) : num_cells_(mesh.num_cells())
{
    is_boundary_.reserve(mesh.num_edges());
    for (const MeshEdge& e : mesh.edges())
        is_boundary_.push_back(e.is_boundary());
    num_boundary_ = mesh.num_boundary_edges();
}

std::vector<std::size_t> DofMap::local_dofs(const PolygonalMesh& mesh, std::size_t cell) const
{
    std::vector<std::size_t> dofs{interior_dof(cell, 0), interior_dof(cell, 1), interior_dof(cell, 2)};
    for (const CellEdge& ce : mesh.cell_edges(cell))
        dofs.push_back(edge_dof(ce.edge));
    return dofs;
}

DofMap build_dof_map(const PolygonalMesh& mesh) { return DofMap(mesh); }

WgFunction WgFunction::zero(const DofMap& dofs)
{
    return {std::vector<Eigen::Vector3d>(dofs.num_cells(), Eigen::Vector3d::Zero()),
            std::vector<double>(dofs.num_edges(), 0.0)};
}

Eigen::VectorXd WgFunction::to_vector(const DofMap& dofs) const
{
    Eigen::VectorXd v(dofs.num_dofs());
    for (std::size_t c = 0; c < interior.size(); ++c)
        v.segment<3>(static_cast<Eigen::Index>(3 * c)) = interior[c];
    for (std::size_t e = 0; e < edge.size(); ++e)
        v[static_cast<Eigen::Index>(dofs.edge_dof(e))] = edge[e];
    return v;
}

WgFunction WgFunction::from_vector(const DofMap& dofs, const Eigen::VectorXd& v)
{
    WgFunction f = zero(dofs);
    for (std::size_t c = 0; c < dofs.num_cells(); ++c)
        f.interior[c] = v.segment<3>(static_cast<Eigen::Index>(3 * c));
    for (std::size_t e = 0; e < dofs.num_edges(); ++e)
        f.edge[e] = v[static_cast<Eigen::Index>(dofs.edge_dof(e))];
    return f;
}

WgFunction operator-(const WgFunction& a, const WgFunction& b)
{
    WgFunction r = a;
    for (std::size_t c = 0; c < r.interior.size(); ++c)
        r.interior[c] -= b.interior[c];
    for (std::size_t e = 0; e < r.edge.size(); ++e)
        r.edge[e] -= b.edge[e];
    return r;
}

DiscreteSpace::DiscreteSpace(const PolygonalMesh& m, std::vector<ElementCut> c)
    : mesh(&m), cuts(std::move(c)), dofs(m)
{
    bases.reserve(cuts.size());
    for (const ElementCut& cut : cuts)
        bases.push_back(make_element_basis(cut));
}

std::optional<double> DiscreteSpace::edge_split(std::size_t edge) const
{
    for (std::size_t cell : mesh->edge(edge).cells) {
        if (cell == no_index)
            continue;
        const auto& local = mesh->cell_edges(cell);
        for (std::size_t k = 0; k < local.size(); ++k) {
            if (local[k].edge != edge)
                continue;
            const auto& t = cuts[cell].edges[k].cut_parameter;
            if (t)
                return local[k].forward ? *t : 1.0 - *t;
        }
    }
    return std::nullopt;
}

WgFunction project_Qh(const DiscreteSpace& space, const ScalarField& u, int degree)
{
    const PolygonalMesh& mesh = *space.mesh;
    WgFunction f = WgFunction::zero(space.dofs);
    for (std::size_t c = 0; c < mesh.num_cells(); ++c)
        f.interior[c] = project_Q0(space.cuts[c], space.bases[c], u, degree);
    for (std::size_t e = 0; e < mesh.num_edges(); ++e) {
        const MeshEdge& edge = mesh.edge(e);
        f.edge[e] = project_Qpartial(mesh.vertex(edge.vertices[0]), mesh.vertex(edge.vertices[1]), u,
                                     space.edge_split(e));
    }
    return f;
}

} // namespace iwg
