#pragma once

#include "iwg/geometry.hpp"

#include <span>
#include <vector>

namespace iwg {

struct QuadratureRule {
    std::vector<Vec2> points;
    std::vector<double> weights;

    std::size_t size() const { return points.size(); }

    template <class F>
    double integrate(F&& f) const
    {
        double sum = 0.0;
        for (std::size_t q = 0; q < points.size(); ++q)
            sum += weights[q] * f(points[q]);
        return sum;
    }
};

/// Symmetric rule on the triangle (a, b, c), exact for polynomials of the
/// given degree (1..6). All weights are positive.
QuadratureRule triangle_quadrature(const Vec2& a, const Vec2& b, const Vec2& c, int degree);

/// Centroid-fan triangulation of a simple CCW polygon with a symmetric rule
/// on each triangle. Weights sum to the polygon area. Throws Error for a
/// degenerate polygon or degree outside 1..6.
QuadratureRule polygon_quadrature(std::span<const Vec2> polygon, int degree);

/// Gauss-Legendre rule with n points on [0, 1]; weights sum to 1.
struct LineRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};
const LineRule& gauss_legendre(int n);

} // namespace iwg
