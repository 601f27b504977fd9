#include "iwg/interface_geometry.hpp"

#include "iwg/errors.hpp"

#include <algorithm>
#include <cmath>

namespace iwg {

const SubRegion& ElementCut::region(Side s) const
{
    if (regions.size() == 1)
        return regions.front();
    return regions[side_index(s)];
}

namespace {

Side sign_side(double value) { return value > 0.0 ? Side::plus : Side::minus; }

// Bisection on t in [0,1] keeping side(lo) == side_a and side(hi) != side_a.
// Interior evaluations use the raw sign of the level set.
double bisect(const Vec2& a, const Vec2& b, const LevelSet& level, Side side_a, double tol,
              int max_iterations)
{
    double lo = 0.0;
    double hi = 1.0;
    for (int it = 0; it < max_iterations; ++it) {
        if (hi - lo <= tol)
            return 0.5 * (lo + hi);
        const double mid = 0.5 * (lo + hi);
        const double value = level((1.0 - mid) * a + mid * b);
        if (!std::isfinite(value))
            throw NumericalError("level set is not finite along an edge");
        if (value == 0.0)
            return mid;
        if (sign_side(value) == side_a)
            lo = mid;
        else
            hi = mid;
    }
    throw NumericalError("edge bisection did not converge in " + std::to_string(max_iterations) +
                         " iterations");
}

// Removes consecutive points closer than `eps`, including across the wrap.
void drop_duplicates(Polygon& poly, double eps)
{
    Polygon out;
    out.reserve(poly.size());
    for (const Vec2& p : poly)
        if (out.empty() || (p - out.back()).norm() > eps)
            out.push_back(p);
    while (out.size() > 1 && (out.front() - out.back()).norm() <= eps)
        out.pop_back();
    poly = std::move(out);
}

ElementCut non_interface(ElementCut cut, const Polygon& poly, Side side, const CoefficientPair& beta)
{
    cut.chord.reset();
    cut.regions = {SubRegion{poly, side, cut.cell_area, beta.on(side)(cut.centroid)}};
    cut.vertex_sides.assign(poly.size(), side);
    cut.edges.clear();
    for (std::size_t k = 0; k < poly.size(); ++k) {
        LocalEdgeSplit e;
        e.a = poly[k];
        e.b = poly[(k + 1) % poly.size()];
        e.pieces[0] = {e.a, e.b, side};
        e.num_pieces = 1;
        cut.edges.push_back(e);
    }
    return cut;
}

} // namespace

std::optional<Vec2> edge_intersection(const Vec2& a, const Vec2& b, const LevelSet& level,
                                      double tol, int max_iterations)
{
    const double la = level(a);
    const double lb = level(b);
    if (!(la * lb < 0.0))
        return std::nullopt;
    const double t = bisect(a, b, level, sign_side(la), tol, max_iterations);
    return (1.0 - t) * a + t * b;
}

double barycenter_beta(std::span<const Vec2> region, const ScalarField& beta_branch)
{
    return beta_branch(polygon_centroid(region));
}

ElementCut classify_element(const PolygonalMesh& mesh, std::size_t cell, const LevelSet& level,
                            const CoefficientPair& beta, const CutOptions& options)
{
    const Polygon poly = mesh.cell_polygon(cell);
    const std::size_t n = poly.size();

    ElementCut cut;
    cut.cell = cell;
    cut.cell_area = mesh.cell_area(cell);
    cut.diameter = mesh.cell_diameter(cell);
    cut.centroid = mesh.cell_centroid(cell);

    const double snap = options.snap_factor * cut.diameter;
    const Side centroid_side = level(cut.centroid) >= 0.0 ? Side::plus : Side::minus;

    std::vector<Side> sides(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double value = level(poly[i]);
        if (!std::isfinite(value))
            throw NumericalError("level set is not finite at a vertex of cell " +
                                 std::to_string(cell));
        sides[i] = std::abs(value) < snap ? centroid_side : sign_side(value);
    }

    int changes = 0;
    for (std::size_t i = 0; i < n; ++i)
        changes += sides[i] != sides[(i + 1) % n];
    if (changes == 0)
        return non_interface(std::move(cut), poly, sides[0], beta);
    if (changes > 2)
        throw CutTopologyError(cell, changes);

    std::array<Polygon, 2> parts;
    std::vector<Vec2> chord_points;
    cut.edges.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t next = (k + 1) % n;
        LocalEdgeSplit& e = cut.edges[k];
        e.a = poly[k];
        e.b = poly[next];
        parts[side_index(sides[k])].push_back(poly[k]);
        if (sides[k] == sides[next]) {
            e.pieces[0] = {e.a, e.b, sides[k]};
            e.num_pieces = 1;
            continue;
        }
        const double t = bisect(e.a, e.b, level, sides[k], options.root_factor,
                                options.max_bisection_iterations);
        const Vec2 p = (1.0 - t) * e.a + t * e.b;
        e.cut_parameter = t;
        e.pieces[0] = {e.a, p, sides[k]};
        e.pieces[1] = {p, e.b, sides[next]};
        e.num_pieces = 2;
        parts[0].push_back(p);
        parts[1].push_back(p);
        chord_points.push_back(p);
    }

    std::array<double, 2> areas{0.0, 0.0};
    for (int s = 0; s < 2; ++s) {
        drop_duplicates(parts[s], 1e-14 * cut.diameter);
        areas[s] = parts[s].size() >= 3 ? signed_area(parts[s]) : 0.0;
    }
    if (std::min(areas[0], areas[1]) < options.small_cut_factor * cut.cell_area) {
        const Side majority = areas[0] >= areas[1] ? Side::plus : Side::minus;
        return non_interface(std::move(cut), poly, majority, beta);
    }

    InterfaceChord chord;
    chord.p0 = chord_points[0];
    chord.p1 = chord_points[1];
    chord.midpoint = 0.5 * (chord.p0 + chord.p1);
    const Vec2 d = chord.p1 - chord.p0;
    chord.normal = Vec2(-d.y(), d.x()) / d.norm();
    if (chord.normal.dot(polygon_centroid(parts[1]) - polygon_centroid(parts[0])) < 0.0)
        chord.normal = -chord.normal;
    chord.tangent = Vec2(-chord.normal.y(), chord.normal.x());

    cut.chord = chord;
    cut.vertex_sides = std::move(sides);
    cut.regions.clear();
    for (Side s : both_sides) {
        const int i = side_index(s);
        const double b = barycenter_beta(parts[i], beta.on(s));
        cut.regions.push_back(SubRegion{std::move(parts[i]), s, areas[i], b});
    }
    return cut;
}

std::vector<ElementCut> classify_mesh(const PolygonalMesh& mesh, const LevelSet& level,
                                      const CoefficientPair& beta, const CutOptions& options)
{
    std::vector<ElementCut> cuts;
    cuts.reserve(mesh.num_cells());
    for (std::size_t c = 0; c < mesh.num_cells(); ++c)
        cuts.push_back(classify_element(mesh, c, level, beta, options));
    return cuts;
}

Side side_of_point(const ElementCut& cut, const Vec2& p)
{
    if (!cut.chord)
        return cut.side();
    return cut.chord->normal.dot(p - cut.chord->midpoint) > 0.0 ? Side::minus : Side::plus;
}

} // namespace iwg
