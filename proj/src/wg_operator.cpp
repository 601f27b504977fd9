#include "iwg/wg_operator.hpp"

#include "iwg/errors.hpp"

#include <Eigen/Cholesky>

namespace iwg {

namespace {

// int_T beta_bar grad phi_i . grad phi_j for i, j in 0..2 (constant per region).
Eigen::Matrix3d weighted_gradient_products(const ElementCut& cut, const ElementBasis& basis)
{
    Eigen::Matrix3d k = Eigen::Matrix3d::Zero();
    for (const SubRegion& region : cut.regions) {
        const auto grad = basis.gradients(region.side);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                k(i, j) += region.beta * region.area * grad[i].dot(grad[j]);
    }
    return k;
}

// int_e beta_bar grad phi_j . n_T ds for j in 0..2.
Eigen::Vector3d edge_fluxes(const ElementCut& cut, const ElementBasis& basis, const LocalEdgeSplit& edge)
{
    const Vec2 n = outward_normal(edge.a, edge.b);
    Eigen::Vector3d flux = Eigen::Vector3d::Zero();
    for (int p = 0; p < edge.num_pieces; ++p) {
        const EdgePiece& piece = edge.pieces[p];
        const double len = (piece.b - piece.a).norm();
        const double beta = cut.beta(piece.side);
        const auto grad = basis.gradients(piece.side);
        for (int j = 0; j < 3; ++j)
            flux[j] += len * beta * grad[j].dot(n);
    }
    return flux;
}

void symmetrize(Eigen::MatrixXd& a) { a = 0.5 * (a + a.transpose()).eval(); }

} // namespace

LocalWeakGradient local_weak_gradient(const ElementCut& cut, const ElementBasis& basis)
{
    const Eigen::Index nloc = 3 + static_cast<Eigen::Index>(cut.edges.size());
    const Eigen::Matrix3d k = weighted_gradient_products(cut, basis);

    LocalWeakGradient lwg;
    lwg.gram = k.bottomRightCorner<2, 2>();

    // Right-hand side of the defining relation, tested with q = phi2, phi3.
    Eigen::Matrix<double, 2, Eigen::Dynamic> rhs(2, nloc);
    rhs.leftCols<3>() = k.bottomRows<2>();
    for (std::size_t e = 0; e < cut.edges.size(); ++e) {
        const LocalEdgeSplit& edge = cut.edges[e];
        const Eigen::Vector3d flux = edge_fluxes(cut, basis, edge);
        const auto avg = basis_edge_averages(basis, edge);
        for (int i = 0; i < 3; ++i)
            rhs.col(i) -= avg[i] * flux.tail<2>();
        rhs.col(3 + static_cast<Eigen::Index>(e)) = flux.tail<2>();
    }

    Eigen::LLT<Eigen::Matrix2d> llt(lwg.gram);
    if (llt.info() != Eigen::Success)
        throw SingularMatrix("element " + std::to_string(cut.cell) + ": singular weak-gradient Gram matrix");
    lwg.map = llt.solve(rhs);
    return lwg;
}

Eigen::MatrixXd local_consistency_matrix(const LocalWeakGradient& lwg)
{
    Eigen::MatrixXd a = lwg.map.transpose() * lwg.gram * lwg.map;
    symmetrize(a);
    return a;
}

Eigen::MatrixXd local_stabilization_matrix(const ElementCut& cut, const ElementBasis& basis, double lambda)
{
    const Eigen::Index nloc = 3 + static_cast<Eigen::Index>(cut.edges.size());
    Eigen::MatrixXd s = Eigen::MatrixXd::Zero(nloc, nloc);
    Eigen::VectorXd w(nloc);
    for (std::size_t e = 0; e < cut.edges.size(); ++e) {
        const auto avg = basis_edge_averages(basis, cut.edges[e]);
        w.setZero();
        w.head<3>() = Eigen::Vector3d(avg[0], avg[1], avg[2]);
        w[3 + static_cast<Eigen::Index>(e)] = -1.0;
        s.noalias() += cut.edges[e].length() * w * w.transpose();
    }
    s *= lambda / cut.diameter;
    symmetrize(s);
    return s;
}

Eigen::MatrixXd local_stiffness(const ElementCut& cut, const ElementBasis& basis,
                                const LocalWeakGradient& lwg, double lambda)
{
    return local_consistency_matrix(lwg) + local_stabilization_matrix(cut, basis, lambda);
}

Eigen::Vector3d local_load(const ElementCut& cut, const ElementBasis& basis, const ScalarField& f,
                           int degree)
{
    Eigen::Vector3d b = Eigen::Vector3d::Zero();
    for_each_quadrature_point(cut, degree, [&](const Vec2& x, double w, Side side) {
        const auto phi = basis.values(x, side);
        const double fx = f(x);
        for (int i = 0; i < 3; ++i)
            b[i] += w * fx * phi[i];
    });
    return b;
}

namespace {

template <class Sink>
void for_each_local_matrix(const DiscreteSpace& space, double lambda, Sink&& sink)
{
    const PolygonalMesh& mesh = *space.mesh;
    for (std::size_t c = 0; c < mesh.num_cells(); ++c) {
        const ElementCut& cut = space.cuts[c];
        const ElementBasis& basis = space.bases[c];
        const LocalWeakGradient lwg = local_weak_gradient(cut, basis);
        sink(c, space.dofs.local_dofs(mesh, c), local_stiffness(cut, basis, lwg, lambda));
    }
}

} // namespace

SparseSymmetric assemble_full_matrix(const DiscreteSpace& space, double lambda)
{
    std::vector<Triplet> entries;
    for_each_local_matrix(space, lambda, [&](std::size_t, const std::vector<std::size_t>& dofs,
                                             const Eigen::MatrixXd& a) {
        for (std::size_t i = 0; i < dofs.size(); ++i)
            for (std::size_t j = 0; j < dofs.size(); ++j)
                entries.push_back({dofs[i], dofs[j], a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j))});
    });
    return SparseSymmetric::from_triplets(space.dofs.num_dofs(), std::move(entries));
}

GlobalSystem assemble(const DiscreteSpace& space, const ScalarField& f, const ScalarField& g,
                      const AssemblyOptions& options)
{
    const PolygonalMesh& mesh = *space.mesh;
    const DofMap& dofs = space.dofs;

    GlobalSystem sys;
    sys.free_index.assign(dofs.num_dofs(), -1);
    sys.dirichlet = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(dofs.num_dofs()));
    for (std::size_t d = 0; d < dofs.num_dofs(); ++d) {
        if (dofs.is_boundary_dof(d))
            continue;
        sys.free_index[d] = static_cast<std::ptrdiff_t>(sys.free_dofs.size());
        sys.free_dofs.push_back(d);
    }
    for (std::size_t e = 0; e < mesh.num_edges(); ++e) {
        const MeshEdge& edge = mesh.edge(e);
        if (!edge.is_boundary())
            continue;
        sys.dirichlet[static_cast<Eigen::Index>(dofs.edge_dof(e))] = project_Qpartial(
            mesh.vertex(edge.vertices[0]), mesh.vertex(edge.vertices[1]), g, space.edge_split(e));
    }

    sys.rhs = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(sys.free_dofs.size()));
    std::vector<Triplet> entries;
    entries.reserve(mesh.num_cells() * 49);
    for_each_local_matrix(space, options.lambda, [&](std::size_t c, const std::vector<std::size_t>& ldofs,
                                                     const Eigen::MatrixXd& a) {
        const Eigen::Vector3d load = local_load(space.cuts[c], space.bases[c], f, options.quad_degree);
        for (std::size_t i = 0; i < ldofs.size(); ++i) {
            const std::ptrdiff_t row = sys.free_index[ldofs[i]];
            if (row < 0)
                continue;
            if (i < 3)
                sys.rhs[row] += load[static_cast<Eigen::Index>(i)];
            for (std::size_t j = 0; j < ldofs.size(); ++j) {
                const double v = a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
                const std::ptrdiff_t col = sys.free_index[ldofs[j]];
                if (col < 0)
                    sys.rhs[row] -= v * sys.dirichlet[static_cast<Eigen::Index>(ldofs[j])];
                else
                    entries.push_back({static_cast<std::size_t>(row), static_cast<std::size_t>(col), v});
            }
        }
    });
    sys.matrix = SparseSymmetric::from_triplets(sys.free_dofs.size(), std::move(entries));
    return sys;
}

WgFunction GlobalSystem::expand(const DiscreteSpace& space, const Eigen::VectorXd& free_values) const
{
    Eigen::VectorXd full = dirichlet;
    for (std::size_t k = 0; k < free_dofs.size(); ++k)
        full[static_cast<Eigen::Index>(free_dofs[k])] = free_values[static_cast<Eigen::Index>(k)];
    return WgFunction::from_vector(space.dofs, full);
}

} // namespace iwg
