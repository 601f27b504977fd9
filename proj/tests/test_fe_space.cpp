#include "doctest.h"

#include "oracles.hpp"

#include "iwg/fe_space.hpp"

#include <cmath>

using namespace iwg;

namespace {

const CoefficientPair beta_1_2{[](const Vec2&) { return 1.0; }, [](const Vec2&) { return 2.0; }};

struct HorizontalCut {
    PolygonalMesh mesh{{{0, 0}, {1, 0}, {1, 1}, {0, 1}}, {{0, 1, 2, 3}}};
    ElementCut cut = classify_element(mesh, 0, [](const Vec2& x) { return x.y() - 0.5; }, beta_1_2);
    ElementBasis basis = make_element_basis(cut);
};

// int_T g over each side with the oracle, using the branch for that side.
double oracle_integral(const ElementCut& cut, const std::function<double(const Vec2&, Side)>& g)
{
    double sum = 0.0;
    for (const SubRegion& r : cut.regions)
        sum += oracle::subdivision_integral(r.polygon, [&](const Vec2& x) { return g(x, r.side); });
    return sum;
}

} // namespace

TEST_SUITE("fe_space") {

TEST_CASE("broken basis on a cut square")
{
    const HorizontalCut h;
    const auto top = eval_basis(h.basis, h.cut, {0.5, 1.0});
    const auto bottom = eval_basis(h.basis, h.cut, {0.5, 0.0});
    CHECK(top[0] == 1.0);
    CHECK(top[2] == doctest::Approx(-0.5));
    CHECK(bottom[2] == doctest::Approx(0.25));
    CHECK(eval_basis(h.basis, h.cut, {0.8, 0.5})[1] == doctest::Approx(0.3));

    // Flux of phi3 across the chord is the same from both sides.
    const Vec2 n = h.cut.chord->normal;
    for (Side s : both_sides)
        CHECK(h.cut.beta(s) * eval_basis_grad(h.basis, s)[2].dot(n) == doctest::Approx(1.0));
}

TEST_CASE("edge averages of the basis")
{
    const HorizontalCut h;
    // Loop edge 3 runs from (0,1) to (0,0).
    const auto left = basis_edge_averages(h.basis, h.cut.edges[3]);
    CHECK(left[0] == doctest::Approx(1.0));
    CHECK(left[1] == doctest::Approx(-0.5));
    CHECK(left[2] == doctest::Approx(-0.0625));
    const auto bottom = basis_edge_averages(h.basis, h.cut.edges[0]);
    CHECK(bottom[1] == doctest::Approx(0.0));
    CHECK(bottom[2] == doctest::Approx(0.25));
    CHECK(project_Qpartial(h.basis, h.cut.edges[3], Eigen::Vector3d(2.0, 0.0, 16.0)) == doctest::Approx(1.0));
}

TEST_CASE("edge projection of a function")
{
    CHECK(project_Qpartial(Vec2(0, 0), Vec2(1, 0), [](const Vec2& x) { return x.x(); }) == doctest::Approx(0.5));
    // |y - 0.5| has a kink, integrated exactly when split there.
    const auto kink = [](const Vec2& x) { return std::abs(x.y() - 0.5); };
    CHECK(project_Qpartial(Vec2(0, 0), Vec2(0, 1), kink, 0.5) == doctest::Approx(0.25).epsilon(1e-14));
}

TEST_CASE("mass matrix against the subdivision oracle")
{
    const HorizontalCut h;
    const Eigen::Matrix3d mass = element_mass_matrix(h.cut, h.basis, 2);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            const double expected = oracle_integral(h.cut, [&](const Vec2& x, Side s) {
                const auto v = h.basis.values(x, s);
                return v[i] * v[j];
            });
            CHECK(std::abs(mass(i, j) - expected) < 1e-14);
        }
}

TEST_CASE("L2 projection onto the element space")
{
    const HorizontalCut h;
    const Eigen::Vector3d constant = project_Q0(h.cut, h.basis, [](const Vec2&) { return 7.0; }, 4);
    CHECK((constant - Eigen::Vector3d(7.0, 0.0, 0.0)).norm() < 1e-13);

    // Idempotent on the element space.
    const Eigen::Vector3d c(0.3, -1.2, 2.5);
    const ScalarField in_space = [&](const Vec2& x) { return h.basis.evaluate(c, x, side_of_point(h.cut, x)); };
    CHECK((project_Q0(h.cut, h.basis, in_space, 4) - c).norm() < 1e-13);

    // The residual of a general function is orthogonal to every basis function.
    const ScalarField u = [](const Vec2& x) { return std::sin(3.0 * x.x()) * std::exp(x.y()); };
    const Eigen::Vector3d q = project_Q0(h.cut, h.basis, u, 6);
    for (int i = 0; i < 3; ++i) {
        const double residual = oracle_integral(h.cut, [&](const Vec2& x, Side s) {
            return (u(x) - h.basis.evaluate(q, x, s)) * h.basis.values(x, s)[i];
        });
        CHECK(std::abs(residual) < 1e-4);
    }
}

TEST_CASE("degree of freedom numbering")
{
    const PolygonalMesh one = generate_uniform_square_mesh(1);
    const DofMap d1(one);
    CHECK(d1.num_dofs() == 7);
    CHECK(d1.num_boundary_dofs() == 4);

    const PolygonalMesh two = generate_uniform_square_mesh(2);
    const DofMap d2 = build_dof_map(two);
    CHECK(d2.num_dofs() == 24);
    CHECK(d2.num_boundary_dofs() == 8);
    CHECK(d2.interior_dof(1, 2) == 5);
    CHECK(d2.edge_dof(0) == 12);
    for (std::size_t dof = 0; dof < 12; ++dof)
        CHECK_FALSE(d2.is_boundary_dof(dof));
    const auto local = d2.local_dofs(two, 3);
    REQUIRE(local.size() == 7);
    CHECK(local[0] == 9);
    CHECK(local[2] == 11);
    for (std::size_t k = 3; k < 7; ++k)
        CHECK(local[k] >= 12);

    const WgFunction zero = WgFunction::zero(d2);
    Eigen::VectorXd v = Eigen::VectorXd::LinSpaced(24, 1.0, 24.0);
    const WgFunction f = WgFunction::from_vector(d2, v);
    CHECK((f.to_vector(d2) - v).norm() == 0.0);
    CHECK(((f - zero).to_vector(d2) - v).norm() == 0.0);
    CHECK(f.interior[1][2] == 6.0);
    CHECK(f.edge[0] == 13.0);
}

TEST_CASE("global projection of a linear function")
{
    const PolygonalMesh mesh = generate_uniform_square_mesh(4);
    const DiscreteSpace space(mesh, classify_mesh(mesh, [](const Vec2&) { return 1.0; }, beta_1_2));
    const ScalarField u = [](const Vec2& x) { return 1.0 + 2.0 * x.x() - 3.0 * x.y(); };
    const WgFunction q = project_Qh(space, u, 4);
    for (std::size_t c = 0; c < mesh.num_cells(); ++c) {
        const Vec2 xc = mesh.cell_centroid(c);
        CHECK(q.interior[c][0] == doctest::Approx(u(xc)));
        CHECK(q.interior[c][1] == doctest::Approx(2.0));
        CHECK(q.interior[c][2] == doctest::Approx(-3.0));
    }
    for (std::size_t e = 0; e < mesh.num_edges(); ++e) {
        const auto& v = mesh.edge(e).vertices;
        CHECK(q.edge[e] == doctest::Approx(u(0.5 * (mesh.vertex(v[0]) + mesh.vertex(v[1])))));
    }
}

}
