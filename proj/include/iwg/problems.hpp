#pragma once

#include "iwg/interface_geometry.hpp"

#include <functional>
#include <string>
#include <vector>

namespace iwg {

using VectorField = std::function<Vec2(const Vec2&)>;

struct VectorPair {
    VectorField plus;
    VectorField minus;

    const VectorField& on(Side s) const { return s == Side::plus ? plus : minus; }
};

/// Interface problem -div(beta grad u) = f with a piecewise exact solution.
/// Branches are selected by the sign of the level set (L > 0 is +).
struct ProblemSpec {
    std::string name;
    LevelSet level;
    CoefficientPair beta;
    CoefficientPair u;
    VectorPair grad_u;
    CoefficientPair f;
    /// n points on the interface inside the domain.
    std::function<std::vector<Vec2>(int)> interface_points;

    Side side(const Vec2& x) const { return level(x) > 0.0 ? Side::plus : Side::minus; }

    double exact(const Vec2& x) const { return u.on(side(x))(x); }
    Vec2 exact_gradient(const Vec2& x) const { return grad_u.on(side(x))(x); }
    double source(const Vec2& x) const { return f.on(side(x))(x); }
    double coefficient(const Vec2& x) const { return beta.on(side(x))(x); }

    ScalarField exact_field() const;
    ScalarField source_field() const;
    VectorField exact_gradient_field() const;
};

/// Circle of radius 0.4 about (0.5, 0.5), + outside, u = (r^2 - r0^2)^3 / beta.
ProblemSpec problem_circle(double beta_plus, double beta_minus);

/// Interface with a corner at (1, 0.5) from the level set
/// L = -(2y-1)^2 + ((2x-2) tan 10deg)^2 (2x-1), u = L / beta.
ProblemSpec problem_sharp_edge(double beta_plus = 1000.0, double beta_minus = 1.0);

/// Ellipse (r1, r2) = (0.25, 0.125) with a smooth variable coefficient
/// inside, u = L / beta.
ProblemSpec problem_variable_coefficient();

ProblemSpec make_problem(const std::string& example, double beta_plus, double beta_minus);

struct ProblemCheck {
    double max_value_jump = 0.0;
    double max_flux_jump = 0.0;
    double max_source_mismatch = 0.0;  // relative to max(1, |f|)
    bool passed = false;
};

/// Samples interface continuity of u and beta du/dn, and compares f with a
/// flux-form central difference of beta grad u (step 1e-5) on each side.
ProblemCheck validate_problem(const ProblemSpec& problem, int samples = 200,
                              double jump_tol = 1e-10, double source_tol = 1e-4);

} // namespace iwg
