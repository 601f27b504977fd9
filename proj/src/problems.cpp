#include "iwg/problems.hpp"

#include "iwg/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace iwg {

ScalarField ProblemSpec::exact_field() const
{
    return [p = *this](const Vec2& x) { return p.exact(x); };
}

ScalarField ProblemSpec::source_field() const
{
    return [p = *this](const Vec2& x) { return p.source(x); };
}

VectorField ProblemSpec::exact_gradient_field() const
{
    return [p = *this](const Vec2& x) { return p.exact_gradient(x); };
}

namespace {

constexpr double r0 = 0.4;  // circle radius
constexpr double r1 = 0.25;  // ellipse semi-axes
constexpr double r2 = 0.125;

ScalarField constant(double c)
{
    return [c](const Vec2&) { return c; };
}

} // namespace

ProblemSpec problem_circle(double beta_plus, double beta_minus)
{
    if (!(beta_plus > 0.0) || !(beta_minus > 0.0))
        throw ParseError("circle example needs positive beta values");
    const Vec2 center(0.5, 0.5);

    ProblemSpec p;
    p.name = "circle";
    p.level = [center](const Vec2& x) { return (x - center).squaredNorm() - r0 * r0; };
    p.beta = {constant(beta_plus), constant(beta_minus)};

    auto u_branch = [center](double beta) {
        return [center, beta](const Vec2& x) {
            const double w = (x - center).squaredNorm() - r0 * r0;
            return w * w * w / beta;
        };
    };
    auto grad_branch = [center](double beta) {
        return [center, beta](const Vec2& x) -> Vec2 {
            const double w = (x - center).squaredNorm() - r0 * r0;
            return 6.0 * w * w / beta * (x - center);
        };
    };
    p.u = {u_branch(beta_plus), u_branch(beta_minus)};
    p.grad_u = {grad_branch(beta_plus), grad_branch(beta_minus)};

    // beta cancels: -div(grad w^3) = -(12 w^2 + 24 r^2 w).
    ScalarField f = [center](const Vec2& x) {
        const double r2 = (x - center).squaredNorm();
        const double w = r2 - r0 * r0;
        return -(12.0 * w * w + 24.0 * r2 * w);
    };
    p.f = {f, f};
    p.interface_points = [center](int n) {
        std::vector<Vec2> pts;
        for (int i = 0; i < n; ++i) {
            const double t = 2.0 * std::numbers::pi * (i + 0.5) / n;
            pts.push_back(center + r0 * Vec2(std::cos(t), std::sin(t)));
        }
        return pts;
    };
    return p;
}

ProblemSpec problem_sharp_edge(double beta_plus, double beta_minus)
{
    if (!(beta_plus > 0.0) || !(beta_minus > 0.0))
        throw ParseError("sharp-edge example needs positive beta values");
    const double tan_theta = std::tan(10.0 * std::numbers::pi / 180.0);
    const double k = tan_theta * tan_theta;

    auto level = [k](const Vec2& x) {
        const double a = 2.0 * x.y() - 1.0;
        const double b = 2.0 * x.x() - 2.0;
        return -a * a + k * b * b * (2.0 * x.x() - 1.0);
    };
    auto grad_level = [k](const Vec2& x) -> Vec2 {
        const double b = 2.0 * x.x() - 2.0;
        const double c = 2.0 * x.x() - 1.0;
        return {k * (4.0 * b * c + 2.0 * b * b), -4.0 * (2.0 * x.y() - 1.0)};
    };

    ProblemSpec p;
    p.name = "sharp";
    p.level = level;
    p.beta = {constant(beta_plus), constant(beta_minus)};
    auto u_branch = [level](double beta) { return [level, beta](const Vec2& x) { return level(x) / beta; }; };
    auto grad_branch = [grad_level](double beta) {
        return [grad_level, beta](const Vec2& x) -> Vec2 { return grad_level(x) / beta; };
    };
    p.u = {u_branch(beta_plus), u_branch(beta_minus)};
    p.grad_u = {grad_branch(beta_plus), grad_branch(beta_minus)};
    // -Laplace L; d2/dx2 of (2x-2)^2 (2x-1) is 48x - 40.
    ScalarField f = [k](const Vec2& x) { return 8.0 - k * (48.0 * x.x() - 40.0); };
    p.f = {f, f};
    p.interface_points = [tan_theta](int n) {
        std::vector<Vec2> pts;
        const int half = std::max(1, n / 2);
        for (int i = 0; i < n; ++i) {
            const double s = (i % half + 0.5) / half;  // in (0, 1)
            const double x = 0.5 + 0.5 * s;
            const double dy = 0.5 * tan_theta * (2.0 - 2.0 * x) * std::sqrt(2.0 * x - 1.0);
            pts.emplace_back(x, i < half ? 0.5 + dy : 0.5 - dy);
        }
        return pts;
    };
    return p;
}

ProblemSpec problem_variable_coefficient()
{
    auto level = [](const Vec2& x) {
        const double dx = x.x() - 0.5;
        const double dy = x.y() - 0.5;
        return dx * dx / (r1 * r1) + dy * dy / (r2 * r2) - 1.0;
    };
    auto grad_level = [](const Vec2& x) -> Vec2 {
        return {2.0 * (x.x() - 0.5) / (r1 * r1), 2.0 * (x.y() - 0.5) / (r2 * r2)};
    };
    constexpr double laplace_level = 2.0 / (r1 * r1) + 2.0 / (r2 * r2);

    auto beta_in = [](const Vec2& x) {
        const double X = 2.0 * x.x() - 1.0;
        const double Y = 2.0 * x.y() - 1.0;
        return 1.0 + 0.5 * X * X - X * Y + Y * Y;
    };
    auto grad_beta_in = [](const Vec2& x) -> Vec2 {
        const double X = 2.0 * x.x() - 1.0;
        const double Y = 2.0 * x.y() - 1.0;
        return {2.0 * (X - Y), 2.0 * (2.0 * Y - X)};
    };
    constexpr double laplace_beta_in = 12.0;

    ProblemSpec p;
    p.name = "variable";
    p.level = level;
    p.beta = {constant(1.0), beta_in};
    p.u = {level, [=](const Vec2& x) { return level(x) / beta_in(x); }};
    p.grad_u = {grad_level, [=](const Vec2& x) -> Vec2 {
                    const double b = beta_in(x);
                    return grad_level(x) / b - level(x) * grad_beta_in(x) / (b * b);
                }};
    // Inside, beta grad u = grad L - (L / beta) grad beta.
    p.f = {constant(-laplace_level), [=](const Vec2& x) {
               const double b = beta_in(x);
               const double l = level(x);
               const Vec2 gb = grad_beta_in(x);
               return -laplace_level + grad_level(x).dot(gb) / b + l * laplace_beta_in / b -
                      l * gb.squaredNorm() / (b * b);
           }};
    p.interface_points = [](int n) {
        std::vector<Vec2> pts;
        for (int i = 0; i < n; ++i) {
            const double t = 2.0 * std::numbers::pi * (i + 0.5) / n;
            pts.emplace_back(0.5 + r1 * std::cos(t), 0.5 + r2 * std::sin(t));
        }
        return pts;
    };
    return p;
}

ProblemSpec make_problem(const std::string& example, double beta_plus, double beta_minus)
{
    if (example == "circle")
        return problem_circle(beta_plus, beta_minus);
    if (example == "sharp")
        return problem_sharp_edge(beta_plus, beta_minus);
    if (example == "variable")
        return problem_variable_coefficient();
    throw ParseError("unknown example '" + example + "' (expected circle, sharp or variable)");
}

namespace {

// -div(beta grad u) on one branch by a flux-form central difference.
double source_by_differences(const ProblemSpec& p, Side s, const Vec2& x, double h)
{
    const ScalarField& u = p.u.on(s);
    const ScalarField& beta = p.beta.on(s);
    const Vec2 ex(h, 0.0);
    const Vec2 ey(0.0, h);
    const double ux = u(x);
    const double div_x = beta(x + 0.5 * ex) * (u(x + ex) - ux) - beta(x - 0.5 * ex) * (ux - u(x - ex));
    const double div_y = beta(x + 0.5 * ey) * (u(x + ey) - ux) - beta(x - 0.5 * ey) * (ux - u(x - ey));
    return -(div_x + div_y) / (h * h);
}

Vec2 unit_normal_by_differences(const LevelSet& level, const Vec2& x)
{
    constexpr double h = 1e-7;
    const Vec2 g((level(x + Vec2(h, 0)) - level(x - Vec2(h, 0))) / (2 * h),
                 (level(x + Vec2(0, h)) - level(x - Vec2(0, h))) / (2 * h));
    const double n = g.norm();
    return n > 0.0 ? Vec2(g / n) : Vec2(1.0, 0.0);
}

} // namespace

ProblemCheck validate_problem(const ProblemSpec& p, int samples, double jump_tol, double source_tol)
{
    ProblemCheck check;
    for (const Vec2& x : p.interface_points(samples)) {
        const double up = p.u.plus(x);
        const double um = p.u.minus(x);
        check.max_value_jump =
            std::max(check.max_value_jump, std::abs(up - um) / std::max(1.0, std::abs(up)));
        const Vec2 n = unit_normal_by_differences(p.level, x);
        const double fp = p.beta.plus(x) * p.grad_u.plus(x).dot(n);
        const double fm = p.beta.minus(x) * p.grad_u.minus(x).dot(n);
        check.max_flux_jump = std::max(check.max_flux_jump, std::abs(fp - fm) / std::max(1.0, std::abs(fp)));
    }

    std::mt19937_64 rng(20240531);
    std::uniform_real_distribution<double> coord(0.02, 0.98);
    constexpr double step = 1e-5;
    int tested = 0;
    for (int attempt = 0; tested < samples && attempt < 100 * samples; ++attempt) {
        const Vec2 x(coord(rng), coord(rng));
        const Side s = p.side(x);
        // Keep the difference stencil on one side of the interface.
        bool same_side = true;
        for (const Vec2& d : {Vec2(step, 0), Vec2(-step, 0), Vec2(0, step), Vec2(0, -step)})
            same_side = same_side && p.side(x + 10.0 * d) == s;
        if (!same_side)
            continue;
        const double exact = p.f.on(s)(x);
        const double approx = source_by_differences(p, s, x, step);
        check.max_source_mismatch =
            std::max(check.max_source_mismatch, std::abs(exact - approx) / std::max(1.0, std::abs(exact)));
        ++tested;
    }
    check.passed = check.max_value_jump <= jump_tol && check.max_flux_jump <= jump_tol &&
                   check.max_source_mismatch <= source_tol && tested == samples;
    return check;
}

} // namespace iwg
