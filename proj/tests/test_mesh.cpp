#include "doctest.h"

#include "iwg/errors.hpp"
#include "iwg/mesh.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

using namespace iwg;

namespace {

PolygonalMesh load_data(const char* name)
{
    return load_polygon_mesh_file(std::string(IWG_TEST_DATA) + "/" + name);
}

} // namespace

TEST_SUITE("mesh") {

TEST_CASE("uniform square mesh counts")
{
    for (std::size_t n : {1u, 2u, 8u}) {
        CAPTURE(n);
        const PolygonalMesh mesh = generate_uniform_square_mesh(n);
        CHECK(mesh.num_vertices() == (n + 1) * (n + 1));
        CHECK(mesh.num_cells() == n * n);
        CHECK(mesh.num_edges() == 2 * n * (n + 1));
        CHECK(mesh.num_boundary_edges() == 4 * n);
        CHECK(mesh.mesh_size() == doctest::Approx(std::sqrt(2.0) / static_cast<double>(n)));
    }
}

TEST_CASE("cells are counter-clockwise with consistent edge orientation")
{
    const PolygonalMesh mesh = generate_uniform_square_mesh(3);
    for (std::size_t c = 0; c < mesh.num_cells(); ++c) {
        CHECK(mesh.cell_area(c) == doctest::Approx(1.0 / 9.0));
        const auto& loop = mesh.cell(c);
        const auto& edges = mesh.cell_edges(c);
        REQUIRE(edges.size() == loop.size());
        for (std::size_t k = 0; k < loop.size(); ++k) {
            const MeshEdge& e = mesh.edge(edges[k].edge);
            const std::size_t a = loop[k], b = loop[(k + 1) % loop.size()];
            if (edges[k].forward)
                CHECK((e.vertices[0] == a && e.vertices[1] == b));
            else
                CHECK((e.vertices[0] == b && e.vertices[1] == a));
        }
    }
    // Every interior edge is traversed once in each direction.
    for (std::size_t e = 0; e < mesh.num_edges(); ++e) {
        const MeshEdge& edge = mesh.edge(e);
        if (edge.is_boundary())
            continue;
        int forward = 0;
        for (std::size_t c : edge.cells)
            for (const CellEdge& ce : mesh.cell_edges(c))
                if (ce.edge == e)
                    forward += ce.forward ? 1 : 0;
        CHECK(forward == 1);
    }
}

TEST_CASE("polygon file with mixed cells")
{
    const PolygonalMesh mesh = load_data("four_cells.mesh");
    CHECK(mesh.num_vertices() == 10);
    CHECK(mesh.num_cells() == 4);
    CHECK(mesh.num_edges() == 13);
    CHECK(mesh.num_boundary_edges() == 8);
    double total = 0.0;
    for (std::size_t c = 0; c < mesh.num_cells(); ++c)
        total += mesh.cell_area(c);
    CHECK(total == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("round trip through the text format")
{
    const PolygonalMesh mesh = load_data("four_cells.mesh");
    std::stringstream buffer;
    write_polygon_mesh(buffer, mesh);
    const PolygonalMesh again = load_polygon_mesh(buffer);
    REQUIRE(again.num_vertices() == mesh.num_vertices());
    REQUIRE(again.num_cells() == mesh.num_cells());
    for (std::size_t v = 0; v < mesh.num_vertices(); ++v)
        CHECK(again.vertex(v) == mesh.vertex(v));
    for (std::size_t c = 0; c < mesh.num_cells(); ++c)
        CHECK(again.cell(c) == mesh.cell(c));
}

TEST_CASE("malformed meshes are rejected")
{
    CHECK_THROWS_AS(load_data("duplicate_cell.mesh"), TopologyError);
    CHECK_THROWS_AS(load_data("clockwise.mesh"), OrientationError);
    CHECK_THROWS_AS(load_data("does_not_exist.mesh"), ParseError);

    std::istringstream truncated("3 1\n0 0\n1 0\n");
    CHECK_THROWS_AS(load_polygon_mesh(truncated), ParseError);
    std::istringstream bad_index("3 1\n0 0\n1 0\n0 1\n3 0 1 7\n");
    CHECK_THROWS_AS(load_polygon_mesh(bad_index), ParseError);
    std::istringstream trailing("3 1\n0 0\n1 0\n0 1\n3 0 1 2 9\n");
    CHECK_THROWS_AS(load_polygon_mesh(trailing), ParseError);
}

TEST_CASE("geometry of a regular hexagon")
{
    std::vector<Vec2> vertices;
    for (int k = 0; k < 6; ++k)
        vertices.emplace_back(std::cos(k * M_PI / 3.0), std::sin(k * M_PI / 3.0));
    const PolygonalMesh mesh(vertices, {{0, 1, 2, 3, 4, 5}});
    CHECK(mesh.cell_area(0) == doctest::Approx(3.0 * std::sqrt(3.0) / 2.0).epsilon(1e-14));
    CHECK(mesh.cell_diameter(0) == doctest::Approx(2.0));
    CHECK(mesh.cell_centroid(0).norm() < 1e-15);
    CHECK(mesh.num_boundary_edges() == 6);
}

TEST_CASE("shape regularity diagnostics")
{
    const MeshQualityReport square = validate_mesh(generate_uniform_square_mesh(4), 0.1);
    CHECK(square.min_edge_ratio == doctest::Approx(1.0 / std::sqrt(2.0)));
    // Inscribed radius h/2 over diameter h*sqrt(2).
    CHECK(square.min_ball_ratio == doctest::Approx(0.5 / std::sqrt(2.0)).epsilon(0.05));
    CHECK(square.edge_violations.empty());
    CHECK(square.ball_violations.empty());

    const PolygonalMesh sliver({{0, 0}, {1, 0}, {0.5, 0.01}}, {{0, 1, 2}});
    const MeshQualityReport report = validate_mesh(sliver, 0.1);
    CHECK(report.ball_violations.size() == 1);
    CHECK(report.min_ball_ratio < 0.1);

    const PolygonalMesh short_edge({{0, 0}, {1, 0}, {1, 1}, {0.02, 1}, {0, 0.99}}, {{0, 1, 2, 3, 4}});
    const MeshQualityReport report2 = validate_mesh(short_edge, 0.1);
    CHECK(report2.edge_violations.size() == 1);
    CHECK(report2.ball_violations.empty());
}

}
