#pragma once

#include "iwg/geometry.hpp"

#include <array>
#include <cstddef>
#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

namespace iwg {

inline constexpr std::size_t no_index = std::numeric_limits<std::size_t>::max();

struct MeshEdge {
    std::array<std::size_t, 2> vertices;
    // cells[1] == no_index on the boundary of the domain.
    std::array<std::size_t, 2> cells{no_index, no_index};

    bool is_boundary() const { return cells[1] == no_index; }
};

/// Edge of a cell in loop order. `forward` is true when the global edge is
/// stored with the same orientation as the cell's CCW loop.
struct CellEdge {
    std::size_t edge;
    bool forward;
};

struct CellGeometry {
    double area;
    double diameter;
    Vec2 centroid;
    Polygon vertices;
};

/// Polygonal mesh with derived edge topology. Immutable after construction.
class PolygonalMesh {
public:
    /// Builds the edge topology and checks that each cell is a CCW loop of
    /// at least three distinct vertices and that every edge borders at most
    /// two cells. Throws ParseError, OrientationError or TopologyError.
    PolygonalMesh(std::vector<Vec2> vertices, std::vector<std::vector<std::size_t>> cells);

    std::size_t num_vertices() const { return vertices_.size(); }
    std::size_t num_cells() const { return cells_.size(); }
    std::size_t num_edges() const { return edges_.size(); }
    std::size_t num_boundary_edges() const { return num_boundary_edges_; }

    const std::vector<Vec2>& vertices() const { return vertices_; }
    const Vec2& vertex(std::size_t i) const { return vertices_[i]; }
    const std::vector<std::size_t>& cell(std::size_t c) const { return cells_[c]; }
    const std::vector<MeshEdge>& edges() const { return edges_; }
    const MeshEdge& edge(std::size_t e) const { return edges_[e]; }
    const std::vector<CellEdge>& cell_edges(std::size_t c) const { return cell_edges_[c]; }

    Polygon cell_polygon(std::size_t c) const;
    double edge_length(std::size_t e) const;

    double cell_area(std::size_t c) const { return areas_[c]; }
    double cell_diameter(std::size_t c) const { return diameters_[c]; }
    const Vec2& cell_centroid(std::size_t c) const { return centroids_[c]; }

    /// Largest cell diameter.
    double mesh_size() const;

private:
    std::vector<Vec2> vertices_;
    std::vector<std::vector<std::size_t>> cells_;
    std::vector<MeshEdge> edges_;
    std::vector<std::vector<CellEdge>> cell_edges_;
    std::vector<double> areas_;
    std::vector<double> diameters_;
    std::vector<Vec2> centroids_;
    std::size_t num_boundary_edges_ = 0;
};

/// n x n grid of axis-aligned squares on [0,1]^2.
PolygonalMesh generate_uniform_square_mesh(std::size_t n);

/// Reads the text format
///   nv nc
///   x y              (nv lines)
///   k i1 ... ik      (nc lines, zero-based, CCW)
/// with '#' comment lines.
PolygonalMesh load_polygon_mesh(std::istream& in);
PolygonalMesh load_polygon_mesh_file(const std::string& path);

void write_polygon_mesh(std::ostream& out, const PolygonalMesh& mesh);

CellGeometry cell_geometry(const PolygonalMesh& mesh, std::size_t cell);

struct CellQuality {
    double edge_ratio;   // min |e| / h_T
    double ball_ratio;   // estimated inscribed radius / h_T
    std::size_t num_vertices;
};

struct MeshQualityReport {
    std::vector<CellQuality> cells;
    double min_edge_ratio = 1.0;
    double min_ball_ratio = 1.0;
    double rho = 0.0;
    std::vector<std::size_t> edge_violations;  // edge_ratio < rho
    std::vector<std::size_t> ball_violations;  // ball_ratio < rho
};

/// Shape-regularity diagnostics. Never throws on a valid mesh.
MeshQualityReport validate_mesh(const PolygonalMesh& mesh, double rho);

} // namespace iwg
