#include "doctest.h"

#include "iwg/error_norms.hpp"
#include "iwg/wg_operator.hpp"

#include <cmath>
#include <random>
#include <sstream>

using namespace iwg;

namespace {

const CoefficientPair beta_1_10{[](const Vec2&) { return 1.0; }, [](const Vec2&) { return 10.0; }};

const LevelSet circle = [](const Vec2& x) { return (x - Vec2(0.5, 0.5)).squaredNorm() - 0.16; };

WgFunction random_function(const DofMap& dofs, std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> value(-1.0, 1.0);
    Eigen::VectorXd v(static_cast<Eigen::Index>(dofs.num_dofs()));
    for (Eigen::Index i = 0; i < v.size(); ++i)
        v[i] = value(rng);
    return WgFunction::from_vector(dofs, v);
}

} // namespace

TEST_SUITE("error_norms") {

TEST_CASE("norms of simple functions")
{
    const PolygonalMesh mesh = generate_uniform_square_mesh(4);
    const DiscreteSpace space(mesh, classify_mesh(mesh, circle, beta_1_10));
    const WgFunction zero = WgFunction::zero(space.dofs);
    CHECK(discrete_h1_seminorm(space, zero, 1.0) == 0.0);
    CHECK(l2_norm_v0(space, zero) == 0.0);
    CHECK(energy_norm(space, zero, 1.0) == 0.0);

    const WgFunction one = project_Qh(space, [](const Vec2&) { return 1.0; }, 4);
    CHECK(l2_norm_v0(space, one) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(discrete_h1_seminorm(space, one, 1.0) < 1e-13);
    CHECK(energy_norm(space, one, 1.0) < 1e-12);

    const PolygonalMesh plain = generate_uniform_square_mesh(4);
    const DiscreteSpace flat(plain, classify_mesh(plain, [](const Vec2&) { return 1.0; }, beta_1_10));
    const WgFunction x = project_Qh(flat, [](const Vec2& p) { return p.x(); }, 4);
    CHECK(discrete_h1_seminorm(flat, x, 1.0) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(l2_error_v0(flat, x, x) == 0.0);
}

TEST_CASE("energy norm equals the quadratic form of the full matrix")
{
    std::mt19937_64 rng(3);
    const PolygonalMesh mesh = generate_uniform_square_mesh(5);
    const DiscreteSpace space(mesh, classify_mesh(mesh, circle, beta_1_10));
    const SparseSymmetric a = assemble_full_matrix(space, 2.0);
    for (int trial = 0; trial < 5; ++trial) {
        const WgFunction v = random_function(space.dofs, rng);
        const Eigen::VectorXd x = v.to_vector(space.dofs);
        const double quadratic = x.dot(a.multiply(x));
        CHECK(energy_norm(space, v, 2.0) == doctest::Approx(std::sqrt(quadratic)).epsilon(1e-12));
    }
}

TEST_CASE("energy norm and discrete seminorm stay equivalent under refinement")
{
    std::mt19937_64 rng(9);
    double lo = 1e300, hi = 0.0;
    for (std::size_t n : {4u, 8u, 16u}) {
        const PolygonalMesh mesh = generate_uniform_square_mesh(n);
        const DiscreteSpace space(mesh, classify_mesh(mesh, circle, beta_1_10));
        for (int trial = 0; trial < 4; ++trial) {
            const WgFunction v = random_function(space.dofs, rng);
            const double ratio = energy_norm(space, v, 1.0) / discrete_h1_seminorm(space, v, 1.0);
            lo = std::min(lo, ratio);
            hi = std::max(hi, ratio);
        }
    }
    MESSAGE("energy / seminorm ratio in [" << lo << ", " << hi << "]");
    CHECK(lo > 0.1);
    CHECK(hi < 10.0);
}

TEST_CASE("convergence orders")
{
    std::vector<ErrorRow> rows{{8, 3.3027e-3, 8.7554e-4, {}, {}}, {16, 1.6e-3, 2.2e-4, {}, {}}};
    rows = convergence_orders(rows);
    CHECK_FALSE(rows[0].h1_order.has_value());
    CHECK(*rows[1].l2_order == doctest::Approx(std::log2(8.7554e-4 / 2.2e-4)));
    const auto two_levels = convergence_orders({{8, 1.0, 3.3027e-3, {}, {}}, {16, 0.5, 8.7554e-4, {}, {}}});
    CHECK(*two_levels[1].l2_order == doctest::Approx(1.9154).epsilon(1e-4));
    CHECK(*two_levels[1].h1_order == doctest::Approx(1.0));

    const auto exact = convergence_orders({{8, 1.0, 1.0, {}, {}}, {16, 0.0, 0.25, {}, {}}});
    CHECK(std::isinf(*exact[1].h1_order));
    CHECK(*exact[1].l2_order == doctest::Approx(2.0));

    const double h[] = {1.0, 0.5, 0.25};
    const double linear[] = {4.0, 2.0, 1.0};
    const double quadratic[] = {1.0, 0.25, 0.0625};
    CHECK(least_squares_slope(h, linear) == doctest::Approx(1.0));
    CHECK(least_squares_slope(h, quadratic) == doctest::Approx(2.0));
}

TEST_CASE("error table output")
{
    const auto rows = convergence_orders({{8, 2.5e-2, 1.0e-3, {}, {}}, {16, 1.25e-2, 2.5e-4, {}, {}}});
    std::ostringstream csv;
    write_error_csv(csv, rows);
    CHECK(csv.str() == "inv_h,h1_error,h1_order,l2_error,l2_order\n"
                       "8,2.5000000000e-02,,1.0000000000e-03,\n"
                       "16,1.2500000000e-02,1.000000,2.5000000000e-04,2.000000\n");
    std::ostringstream table;
    write_error_table(table, rows);
    CHECK(table.str().find("1.0000") != std::string::npos);
    CHECK(table.str().find("2.0000") != std::string::npos);
}

}
