#include "iwg/quadrature.hpp"

#include "iwg/errors.hpp"

#include <array>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

namespace iwg {

namespace {

// Barycentric orbits of the symmetric triangle rules. `weight` is the
// per-point weight; all weights of a rule sum to one.
struct Orbit {
    enum Kind { s3, s21, s111 } kind;
    double a;
    double b;
    double weight;
};

const std::vector<Orbit>& orbits_for_degree(int degree)
{
    static const std::vector<Orbit> deg1{{Orbit::s3, 0.0, 0.0, 1.0}};
    static const std::vector<Orbit> deg2{{Orbit::s21, 1.0 / 6.0, 0.0, 1.0 / 3.0}};
    static const std::vector<Orbit> deg4{
        {Orbit::s21, 0.445948490915965, 0.0, 0.223381589678011},
        {Orbit::s21, 0.091576213509771, 0.0, 0.109951743655322},
    };
    static const double r15 = std::sqrt(15.0);
    static const std::vector<Orbit> deg5{
        {Orbit::s3, 0.0, 0.0, 9.0 / 40.0},
        {Orbit::s21, (6.0 + r15) / 21.0, 0.0, (155.0 + r15) / 1200.0},
        {Orbit::s21, (6.0 - r15) / 21.0, 0.0, (155.0 - r15) / 1200.0},
    };
    static const std::vector<Orbit> deg6{
        {Orbit::s21, 0.249286745170910, 0.0, 0.116786275726379},
        {Orbit::s21, 0.063089014491502, 0.0, 0.050844906370207},
        {Orbit::s111, 0.053145049844817, 0.310352451033784, 0.082851075618374},
    };
    switch (degree) {
    case 1: return deg1;
    case 2: return deg2;
    case 3:
    case 4: return deg4;  // the 4-point degree-3 rule has a negative weight
    case 5: return deg5;
    case 6: return deg6;
    default: throw Error("quadrature degree " + std::to_string(degree) + " not in 1..6");
    }
}

} // namespace

QuadratureRule triangle_quadrature(const Vec2& a, const Vec2& b, const Vec2& c, int degree)
{
    const double area = 0.5 * cross(b - a, c - a);
    QuadratureRule rule;
    auto add = [&](double l0, double l1, double l2, double w) {
        rule.points.push_back(l0 * a + l1 * b + l2 * c);
        rule.weights.push_back(w * area);
    };
    for (const Orbit& o : orbits_for_degree(degree)) {
        switch (o.kind) {
        case Orbit::s3:
            add(1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0, o.weight);
            break;
        case Orbit::s21: {
            const double w = o.weight;
            const double r = 1.0 - 2.0 * o.a;
            add(r, o.a, o.a, w);
            add(o.a, r, o.a, w);
            add(o.a, o.a, r, w);
            break;
        }
        case Orbit::s111: {
            const double w = o.weight;
            const double r = 1.0 - o.a - o.b;
            add(o.a, o.b, r, w);
            add(o.b, o.a, r, w);
            add(o.a, r, o.b, w);
            add(o.b, r, o.a, w);
            add(r, o.a, o.b, w);
            add(r, o.b, o.a, w);
            break;
        }
        }
    }
    return rule;
}

QuadratureRule polygon_quadrature(std::span<const Vec2> polygon, int degree)
{
    if (degree < 1 || degree > 6)
        throw Error("quadrature degree " + std::to_string(degree) + " not in 1..6");
    if (polygon.size() < 3 || !(signed_area(polygon) > 1e-300))
        throw Error("degenerate polygon in quadrature");

    if (polygon.size() == 3)
        return triangle_quadrature(polygon[0], polygon[1], polygon[2], degree);

    const Vec2 center = polygon_centroid(polygon);
    QuadratureRule rule;
    for (std::size_t i = 0; i < polygon.size(); ++i) {
        const Vec2& a = polygon[i];
        const Vec2& b = polygon[(i + 1) % polygon.size()];
        if (cross(a - center, b - center) <= 0.0)
            continue;  // collinear sliver from a point lying on an edge
        QuadratureRule tri = triangle_quadrature(center, a, b, degree);
        rule.points.insert(rule.points.end(), tri.points.begin(), tri.points.end());
        rule.weights.insert(rule.weights.end(), tri.weights.begin(), tri.weights.end());
    }
    return rule;
}

const LineRule& gauss_legendre(int n)
{
    static std::mutex guard;
    static std::map<int, LineRule> cache;
    std::lock_guard lock(guard);
    if (auto it = cache.find(n); it != cache.end())
        return it->second;
    if (n < 1)
        throw Error("Gauss-Legendre rule needs at least one point");

    LineRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        // Newton iteration on P_n from the Chebyshev-like initial guess.
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0;
            double p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            const double pn = n == 1 ? x : p1;
            const double pm = n == 1 ? 1.0 : p0;
            dp = n * (x * pn - pm) / (x * x - 1.0);
            const double dx = pn / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16)
                break;
        }
        rule.nodes[n - 1 - i] = 0.5 * (1.0 + x);
        rule.weights[n - 1 - i] = 1.0 / ((1.0 - x * x) * dp * dp);
    }
    return cache.emplace(n, std::move(rule)).first->second;
}

} // namespace iwg
