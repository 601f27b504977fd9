#pragma once

#include "iwg/geometry.hpp"
#include "iwg/mesh.hpp"

#include <array>
#include <functional>
#include <optional>
#include <vector>

namespace iwg {

enum class Side { plus, minus };

inline constexpr std::array<Side, 2> both_sides{Side::plus, Side::minus};

inline int side_index(Side s) { return s == Side::plus ? 0 : 1; }

/// Signed level set; the + subdomain is {L > 0}.
using LevelSet = std::function<double(const Vec2&)>;
using ScalarField = std::function<double(const Vec2&)>;

/// Coefficient branches on each subdomain.
struct CoefficientPair {
    ScalarField plus;
    ScalarField minus;

    const ScalarField& on(Side s) const { return s == Side::plus ? plus : minus; }
};

/// A straight piece of a cell edge lying entirely on one side of the chord.
struct EdgePiece {
    Vec2 a;
    Vec2 b;
    Side side;
};

/// Cell edge in loop order, split at the chord endpoint when it is cut.
struct LocalEdgeSplit {
    Vec2 a;
    Vec2 b;
    std::optional<double> cut_parameter;  // t in (0,1) of the cut point along a->b
    std::array<EdgePiece, 2> pieces;
    int num_pieces = 1;

    double length() const { return (b - a).norm(); }
};

/// One of the (at most two) sub-polygons of a cell, with its frozen coefficient.
struct SubRegion {
    Polygon polygon;  // CCW
    Side side;
    double area;
    double beta;
};

struct InterfaceChord {
    Vec2 p0;
    Vec2 p1;
    Vec2 midpoint;  // x0
    Vec2 normal;    // unit, from the + part into the - part
    Vec2 tangent;   // (-n_y, n_x)
};

/// Result of cutting a cell by the interface. A non-interface cell has one
/// region and no chord; an interface cell has regions {+, -} and a chord.
struct ElementCut {
    std::size_t cell = 0;
    std::optional<InterfaceChord> chord;
    std::vector<SubRegion> regions;
    std::vector<LocalEdgeSplit> edges;
    std::vector<Side> vertex_sides;  // after snapping
    double cell_area = 0.0;
    double diameter = 0.0;
    Vec2 centroid = Vec2::Zero();

    bool is_interface() const { return chord.has_value(); }
    /// Side of a non-interface cell.
    Side side() const { return regions.front().side; }
    const SubRegion& region(Side s) const;
    double beta(Side s) const { return region(s).beta; }
};

struct CutOptions {
    double snap_factor = 1e-12;       // vertex snap tolerance relative to h_T
    double small_cut_factor = 1e-10;  // minimum sub-area relative to |T|
    double root_factor = 1e-13;       // bisection tolerance relative to |e|
    int max_bisection_iterations = 100;
};

/// Bisection root of L along [a, b] when L(a) and L(b) have opposite signs.
/// `tol` is an absolute tolerance on the parameter scaled by |b - a|.
/// Throws NumericalError when the iteration cap is hit.
std::optional<Vec2> edge_intersection(const Vec2& a, const Vec2& b, const LevelSet& level,
                                      double tol, int max_iterations = 100);

/// Classifies a cell against the level set and, for interface cells, builds
/// the chord, sub-polygons and frozen coefficients. Throws CutTopologyError
/// when the boundary of the cell changes sign more than twice.
ElementCut classify_element(const PolygonalMesh& mesh, std::size_t cell, const LevelSet& level,
                            const CoefficientPair& beta, const CutOptions& options = {});

std::vector<ElementCut> classify_mesh(const PolygonalMesh& mesh, const LevelSet& level,
                                      const CoefficientPair& beta,
                                      const CutOptions& options = {});

/// Coefficient branch evaluated at the area centroid of `region`.
double barycenter_beta(std::span<const Vec2> region, const ScalarField& beta_branch);

/// Side of `p` relative to the chord half-planes (non-interface: the cell side).
Side side_of_point(const ElementCut& cut, const Vec2& p);

} // namespace iwg
