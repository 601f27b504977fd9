#pragma once

#include "iwg/fe_space.hpp"

#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

namespace iwg {

using VectorField = std::function<Vec2(const Vec2&)>;

/// (sum_T ||grad v0||^2_T + lambda/h_T ||Q_partial v0 - v_partial||^2_dT)^(1/2)
double discrete_h1_seminorm(const DiscreteSpace& space, const WgFunction& v, double lambda);

/// ||v0||_0 through the element mass matrices.
double l2_norm_v0(const DiscreteSpace& space, const WgFunction& v);

/// ||u0 - q0||_0 for two interior coefficient sets.
double l2_error_v0(const DiscreteSpace& space, const WgFunction& u0, const WgFunction& q0);

/// sqrt(a_s(v, v)) evaluated element by element.
double energy_norm(const DiscreteSpace& space, const WgFunction& v, double lambda);

/// ||u - Q0 u||_0 and the broken seminorm |u - Q0 u|_1 over the sub-regions.
struct ProjectionError {
    double l2;
    double h1;
};
ProjectionError projection_error(const DiscreteSpace& space, const WgFunction& q0u, const ScalarField& u,
                                 const VectorField& grad_u, int degree);

/// One refinement level of a convergence table. An order of +infinity
/// marks an exactly vanishing error.
struct ErrorRow {
    long inv_h = 0;
    double h1_error = 0.0;
    double l2_error = 0.0;
    std::optional<double> h1_order;
    std::optional<double> l2_order;
};

/// order_k = log2(e_{k-1} / e_k) for each consecutive pair.
std::vector<ErrorRow> convergence_orders(std::vector<ErrorRow> rows);

/// Least-squares slope of log(error) against log(h).
double least_squares_slope(std::span<const double> h, std::span<const double> errors);

void write_error_csv(std::ostream& out, std::span<const ErrorRow> rows);
void write_error_table(std::ostream& out, std::span<const ErrorRow> rows);

} // namespace iwg
