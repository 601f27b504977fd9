#include "iwg/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace iwg {

double signed_area(std::span<const Vec2> poly)
{
    const std::size_t n = poly.size();
    double twice = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        twice += cross(poly[i], poly[(i + 1) % n]);
    return 0.5 * twice;
}

Vec2 polygon_centroid(std::span<const Vec2> poly)
{
    // Shift to the first vertex to reduce cancellation on small cells.
    const std::size_t n = poly.size();
    const Vec2 origin = poly[0];
    double twice = 0.0;
    Vec2 acc = Vec2::Zero();
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 a = poly[i] - origin;
        const Vec2 b = poly[(i + 1) % n] - origin;
        const double c = cross(a, b);
        twice += c;
        acc += c * (a + b);
    }
    return origin + acc / (3.0 * twice);
}

double polygon_diameter(std::span<const Vec2> poly)
{
    double d = 0.0;
    for (std::size_t i = 0; i < poly.size(); ++i)
        for (std::size_t j = i + 1; j < poly.size(); ++j)
            d = std::max(d, (poly[i] - poly[j]).norm());
    return d;
}

double point_segment_distance(const Vec2& p, const Vec2& a, const Vec2& b)
{
    const Vec2 d = b - a;
    const double len2 = d.squaredNorm();
    if (len2 == 0.0)
        return (p - a).norm();
    const double t = std::clamp((p - a).dot(d) / len2, 0.0, 1.0);
    return (p - (a + t * d)).norm();
}

bool point_in_polygon(std::span<const Vec2> poly, const Vec2& p)
{
    bool inside = false;
    const std::size_t n = poly.size();
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
        const Vec2& a = poly[i];
        const Vec2& b = poly[j];
        if ((a.y() > p.y()) != (b.y() > p.y())) {
            const double x = a.x() + (p.y() - a.y()) * (b.x() - a.x()) / (b.y() - a.y());
            if (p.x() < x)
                inside = !inside;
        }
    }
    return inside;
}

} // namespace iwg
