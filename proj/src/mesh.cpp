#include "iwg/mesh.hpp"

#include "iwg/errors.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>

namespace iwg {

PolygonalMesh::PolygonalMesh(std::vector<Vec2> vertices,
                             std::vector<std::vector<std::size_t>> cells)
    : vertices_(std::move(vertices)), cells_(std::move(cells))
{
    const std::size_t nv = vertices_.size();
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> lookup;

    cell_edges_.resize(cells_.size());
    areas_.reserve(cells_.size());
    diameters_.reserve(cells_.size());
    centroids_.reserve(cells_.size());

    for (std::size_t c = 0; c < cells_.size(); ++c) {
        const auto& loop = cells_[c];
        if (loop.size() < 3)
            throw ParseError("cell " + std::to_string(c) + " has fewer than 3 vertices");
        for (std::size_t v : loop)
            if (v >= nv)
                throw ParseError("cell " + std::to_string(c) + " references vertex " +
                                 std::to_string(v) + " out of range");

        const Polygon poly = cell_polygon(c);
        const double area = signed_area(poly);
        if (!(area > 0.0) || !std::isfinite(area))
            throw OrientationError("cell " + std::to_string(c) +
                                   " is not counter-clockwise (signed area " +
                                   std::to_string(area) + ")");
        areas_.push_back(area);
        diameters_.push_back(polygon_diameter(poly));
        centroids_.push_back(polygon_centroid(poly));

        for (std::size_t k = 0; k < loop.size(); ++k) {
            const std::size_t a = loop[k];
            const std::size_t b = loop[(k + 1) % loop.size()];
            if (a == b)
                throw TopologyError("cell " + std::to_string(c) + " repeats vertex " +
                                    std::to_string(a));
            const auto key = std::minmax(a, b);
            auto [it, inserted] = lookup.try_emplace({key.first, key.second}, edges_.size());
            if (inserted) {
                edges_.push_back(MeshEdge{{a, b}, {c, no_index}});
                cell_edges_[c].push_back({it->second, true});
                continue;
            }
            MeshEdge& e = edges_[it->second];
            if (e.cells[1] != no_index || e.cells[0] == c)
                throw TopologyError("edge (" + std::to_string(key.first) + ", " +
                                    std::to_string(key.second) +
                                    ") is shared by more than two cells");
            // A manifold neighbour traverses the shared edge in the opposite direction.
            if (e.vertices[0] != b)
                throw TopologyError("cells " + std::to_string(e.cells[0]) + " and " +
                                    std::to_string(c) + " traverse edge (" +
                                    std::to_string(key.first) + ", " +
                                    std::to_string(key.second) + ") in the same direction");
            e.cells[1] = c;
            cell_edges_[c].push_back({it->second, false});
        }
    }
    num_boundary_edges_ = static_cast<std::size_t>(
        std::count_if(edges_.begin(), edges_.end(), [](const MeshEdge& e) { return e.is_boundary(); }));
}

Polygon PolygonalMesh::cell_polygon(std::size_t c) const
{
    Polygon poly;
    poly.reserve(cells_[c].size());
    for (std::size_t v : cells_[c])
        poly.push_back(vertices_[v]);
    return poly;
}

double PolygonalMesh::edge_length(std::size_t e) const
{
    return (vertices_[edges_[e].vertices[1]] - vertices_[edges_[e].vertices[0]]).norm();
}

double PolygonalMesh::mesh_size() const
{
    return diameters_.empty() ? 0.0 : *std::max_element(diameters_.begin(), diameters_.end());
}

PolygonalMesh generate_uniform_square_mesh(std::size_t n)
{
    std::vector<Vec2> vertices;
    vertices.reserve((n + 1) * (n + 1));
    const double h = 1.0 / static_cast<double>(n);
    for (std::size_t j = 0; j <= n; ++j)
        for (std::size_t i = 0; i <= n; ++i)
            vertices.emplace_back(i == n ? 1.0 : i * h, j == n ? 1.0 : j * h);

    std::vector<std::vector<std::size_t>> cells;
    cells.reserve(n * n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t v = j * (n + 1) + i;
            cells.push_back({v, v + 1, v + n + 2, v + n + 1});
        }
    return PolygonalMesh(std::move(vertices), std::move(cells));
}

namespace {

// Returns the next non-empty, non-comment line split into a stream.
bool next_record(std::istream& in, std::istringstream& record, std::size_t& line_no)
{
    std::string line;
    while (std::getline(in, line)) {
        ++line_no;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#')
            continue;
        record.clear();
        record.str(line);
        return true;
    }
    return false;
}

[[noreturn]] void parse_fail(std::size_t line_no, const std::string& what)
{
    throw ParseError("mesh line " + std::to_string(line_no) + ": " + what);
}

void expect_end(std::istringstream& record, std::size_t line_no)
{
    std::string extra;
    if (record >> extra)
        parse_fail(line_no, "unexpected trailing token '" + extra + "'");
}

} // namespace

PolygonalMesh load_polygon_mesh(std::istream& in)
{
    std::istringstream record;
    std::size_t line_no = 0;
    long long nv = 0;
    long long nc = 0;
    if (!next_record(in, record, line_no))
        throw ParseError("mesh: missing header");
    if (!(record >> nv >> nc) || nv < 3 || nc < 1)
        parse_fail(line_no, "expected header 'nv nc' with nv >= 3, nc >= 1");
    expect_end(record, line_no);

    std::vector<Vec2> vertices;
    vertices.reserve(static_cast<std::size_t>(nv));
    for (long long i = 0; i < nv; ++i) {
        if (!next_record(in, record, line_no))
            throw ParseError("mesh: expected " + std::to_string(nv) + " vertices, got " +
                             std::to_string(i));
        double x = 0.0;
        double y = 0.0;
        if (!(record >> x >> y) || !std::isfinite(x) || !std::isfinite(y))
            parse_fail(line_no, "expected vertex coordinates 'x y'");
        expect_end(record, line_no);
        vertices.emplace_back(x, y);
    }

    std::vector<std::vector<std::size_t>> cells;
    cells.reserve(static_cast<std::size_t>(nc));
    for (long long c = 0; c < nc; ++c) {
        if (!next_record(in, record, line_no))
            throw ParseError("mesh: expected " + std::to_string(nc) + " cells, got " +
                             std::to_string(c));
        long long k = 0;
        if (!(record >> k) || k < 3)
            parse_fail(line_no, "expected cell vertex count k >= 3");
        std::vector<std::size_t> loop;
        loop.reserve(static_cast<std::size_t>(k));
        for (long long j = 0; j < k; ++j) {
            long long v = -1;
            if (!(record >> v) || v < 0 || v >= nv)
                parse_fail(line_no, "bad vertex index in cell " + std::to_string(c));
            loop.push_back(static_cast<std::size_t>(v));
        }
        expect_end(record, line_no);
        cells.push_back(std::move(loop));
    }
    if (next_record(in, record, line_no))
        parse_fail(line_no, "unexpected content after the last cell");
    return PolygonalMesh(std::move(vertices), std::move(cells));
}

PolygonalMesh load_polygon_mesh_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot open mesh file '" + path + "'");
    return load_polygon_mesh(in);
}

void write_polygon_mesh(std::ostream& out, const PolygonalMesh& mesh)
{
    out << mesh.num_vertices() << ' ' << mesh.num_cells() << '\n';
    out << std::setprecision(17);
    for (const Vec2& v : mesh.vertices())
        out << v.x() << ' ' << v.y() << '\n';
    for (std::size_t c = 0; c < mesh.num_cells(); ++c) {
        out << mesh.cell(c).size();
        for (std::size_t v : mesh.cell(c))
            out << ' ' << v;
        out << '\n';
    }
}

CellGeometry cell_geometry(const PolygonalMesh& mesh, std::size_t cell)
{
    return {mesh.cell_area(cell), mesh.cell_diameter(cell), mesh.cell_centroid(cell),
            mesh.cell_polygon(cell)};
}

namespace {

// Distance to the nearest edge when p lies in the kernel (left of every
// edge of the CCW loop), otherwise a negative value.
double kernel_radius(const Polygon& poly, const Vec2& p)
{
    double r = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < poly.size(); ++i) {
        const Vec2& a = poly[i];
        const Vec2& b = poly[(i + 1) % poly.size()];
        if (cross(b - a, p - a) <= 0.0)
            return -1.0;
        r = std::min(r, point_segment_distance(p, a, b));
    }
    return r;
}

double inscribed_radius_estimate(const Polygon& poly, const Vec2& centroid)
{
    constexpr int samples = 8;
    double best = kernel_radius(poly, centroid);
    Vec2 lo = poly[0];
    Vec2 hi = poly[0];
    for (const Vec2& v : poly) {
        lo = lo.cwiseMin(v);
        hi = hi.cwiseMax(v);
    }
    for (int j = 1; j < samples; ++j)
        for (int i = 1; i < samples; ++i) {
            const Vec2 p(lo.x() + (hi.x() - lo.x()) * i / samples,
                         lo.y() + (hi.y() - lo.y()) * j / samples);
            best = std::max(best, kernel_radius(poly, p));
        }
    if (best > 0.0)
        return best;
    // Not star-shaped w.r.t. any sample: fall back to the centroid.
    if (!point_in_polygon(poly, centroid))
        return 0.0;
    double r = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < poly.size(); ++i)
        r = std::min(r, point_segment_distance(centroid, poly[i], poly[(i + 1) % poly.size()]));
    return r;
}

} // namespace

MeshQualityReport validate_mesh(const PolygonalMesh& mesh, double rho)
{
    MeshQualityReport report;
    report.rho = rho;
    report.cells.reserve(mesh.num_cells());
    for (std::size_t c = 0; c < mesh.num_cells(); ++c) {
        const Polygon poly = mesh.cell_polygon(c);
        const double h = mesh.cell_diameter(c);
        double min_edge = std::numeric_limits<double>::infinity();
        for (const CellEdge& ce : mesh.cell_edges(c))
            min_edge = std::min(min_edge, mesh.edge_length(ce.edge));
        CellQuality q{min_edge / h, inscribed_radius_estimate(poly, mesh.cell_centroid(c)) / h,
                      poly.size()};
        report.min_edge_ratio = std::min(report.min_edge_ratio, q.edge_ratio);
        report.min_ball_ratio = std::min(report.min_ball_ratio, q.ball_ratio);
        if (q.edge_ratio < rho)
            report.edge_violations.push_back(c);
        if (q.ball_ratio < rho)
            report.ball_violations.push_back(c);
        report.cells.push_back(q);
    }
    return report;
}

} // namespace iwg
