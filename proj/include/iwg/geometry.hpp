#pragma once

#include <Eigen/Core>

#include <span>
#include <vector>

namespace iwg {

using Vec2 = Eigen::Vector2d;
using Polygon = std::vector<Vec2>;

/// Signed shoelace area; positive for counter-clockwise loops.
double signed_area(std::span<const Vec2> poly);

/// Area-weighted centroid. Requires non-zero area.
Vec2 polygon_centroid(std::span<const Vec2> poly);

/// Largest distance between any two vertices.
double polygon_diameter(std::span<const Vec2> poly);

/// Outward unit normal of the segment a->b on a counter-clockwise boundary.
inline Vec2 outward_normal(const Vec2& a, const Vec2& b)
{
    const Vec2 d = b - a;
    return Vec2(d.y(), -d.x()) / d.norm();
}

inline double cross(const Vec2& a, const Vec2& b)
{
    return a.x() * b.y() - a.y() * b.x();
}

/// Distance from p to the segment [a, b].
double point_segment_distance(const Vec2& p, const Vec2& a, const Vec2& b);

/// Strict point-in-polygon test (ray casting); points on the boundary may
/// go either way.
bool point_in_polygon(std::span<const Vec2> poly, const Vec2& p);

} // namespace iwg
