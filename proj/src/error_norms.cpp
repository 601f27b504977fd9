#include "iwg/error_norms.hpp"

#include "iwg/errors.hpp"
#include "iwg/wg_operator.hpp"

#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>

namespace iwg {

double discrete_h1_seminorm(const DiscreteSpace& space, const WgFunction& v, double lambda)
{
    const PolygonalMesh& mesh = *space.mesh;
    double sum = 0.0;
    for (std::size_t c = 0; c < mesh.num_cells(); ++c) {
        const ElementCut& cut = space.cuts[c];
        const ElementBasis& basis = space.bases[c];
        for (const SubRegion& region : cut.regions)
            sum += region.area * basis.gradient(v.interior[c], region.side).squaredNorm();
        double penalty = 0.0;
        const auto& local = mesh.cell_edges(c);
        for (std::size_t k = 0; k < local.size(); ++k) {
            const double jump = project_Qpartial(basis, cut.edges[k], v.interior[c]) - v.edge[local[k].edge];
            penalty += cut.edges[k].length() * jump * jump;
        }
        sum += lambda / cut.diameter * penalty;
    }
    return std::sqrt(sum);
}

double l2_norm_v0(const DiscreteSpace& space, const WgFunction& v)
{
    double sum = 0.0;
    for (std::size_t c = 0; c < space.cuts.size(); ++c) {
        // Degree 2 integrates products of broken-linear functions exactly.
        const Eigen::Matrix3d mass = element_mass_matrix(space.cuts[c], space.bases[c], 2);
        sum += v.interior[c].dot(mass * v.interior[c]);
    }
    return std::sqrt(std::max(sum, 0.0));
}

double l2_error_v0(const DiscreteSpace& space, const WgFunction& u0, const WgFunction& q0)
{
    return l2_norm_v0(space, u0 - q0);
}

double energy_norm(const DiscreteSpace& space, const WgFunction& v, double lambda)
{
    const PolygonalMesh& mesh = *space.mesh;
    double sum = 0.0;
    for (std::size_t c = 0; c < mesh.num_cells(); ++c) {
        const ElementCut& cut = space.cuts[c];
        const ElementBasis& basis = space.bases[c];
        const Eigen::MatrixXd a = local_stiffness(cut, basis, local_weak_gradient(cut, basis), lambda);
        Eigen::VectorXd local(a.rows());
        local.head<3>() = v.interior[c];
        const auto& edges = mesh.cell_edges(c);
        for (std::size_t k = 0; k < edges.size(); ++k)
            local[3 + static_cast<Eigen::Index>(k)] = v.edge[edges[k].edge];
        sum += local.dot(a * local);
    }
    return std::sqrt(std::max(sum, 0.0));
}

ProjectionError projection_error(const DiscreteSpace& space, const WgFunction& q0u, const ScalarField& u,
                                 const VectorField& grad_u, int degree)
{
    double l2 = 0.0;
    double h1 = 0.0;
    for (std::size_t c = 0; c < space.cuts.size(); ++c) {
        const ElementBasis& basis = space.bases[c];
        const Eigen::Vector3d& coeffs = q0u.interior[c];
        for_each_quadrature_point(space.cuts[c], degree, [&](const Vec2& x, double w, Side side) {
            const double e = u(x) - basis.evaluate(coeffs, x, side);
            l2 += w * e * e;
            h1 += w * (grad_u(x) - basis.gradient(coeffs, side)).squaredNorm();
        });
    }
    return {std::sqrt(l2), std::sqrt(h1)};
}

namespace {

std::optional<double> order_between(double previous, double current)
{
    if (current == 0.0)
        return std::numeric_limits<double>::infinity();
    return std::log2(previous / current);
}

} // namespace

std::vector<ErrorRow> convergence_orders(std::vector<ErrorRow> rows)
{
    for (std::size_t k = 0; k < rows.size(); ++k) {
        if (k == 0) {
            rows[k].h1_order.reset();
            rows[k].l2_order.reset();
            continue;
        }
        rows[k].h1_order = order_between(rows[k - 1].h1_error, rows[k].h1_error);
        rows[k].l2_order = order_between(rows[k - 1].l2_error, rows[k].l2_error);
    }
    return rows;
}

double least_squares_slope(std::span<const double> h, std::span<const double> errors)
{
    if (h.size() != errors.size() || h.size() < 2)
        throw Error("least-squares slope needs at least two (h, error) pairs");
    const double n = static_cast<double>(h.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < h.size(); ++i) {
        const double x = std::log(h[i]);
        const double y = std::log(errors[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

namespace {

std::string format_error(double e)
{
    std::ostringstream s;
    s << std::scientific << std::setprecision(4) << e;
    return s.str();
}

std::string format_order(const std::optional<double>& order)
{
    if (!order)
        return "";
    if (std::isinf(*order))
        return "exact";
    std::ostringstream s;
    s << std::fixed << std::setprecision(4) << *order;
    return s.str();
}

} // namespace

void write_error_csv(std::ostream& out, std::span<const ErrorRow> rows)
{
    out << "inv_h,h1_error,h1_order,l2_error,l2_order\n";
    for (const ErrorRow& r : rows) {
        std::ostringstream h1, l2;
        h1 << std::scientific << std::setprecision(10) << r.h1_error;
        l2 << std::scientific << std::setprecision(10) << r.l2_error;
        auto order = [](const std::optional<double>& o) {
            if (!o)
                return std::string();
            if (std::isinf(*o))
                return std::string("exact");
            std::ostringstream s;
            s << std::fixed << std::setprecision(6) << *o;
            return s.str();
        };
        out << r.inv_h << ',' << h1.str() << ',' << order(r.h1_order) << ',' << l2.str() << ','
            << order(r.l2_order) << '\n';
    }
}

void write_error_table(std::ostream& out, std::span<const ErrorRow> rows)
{
    out << std::left << std::setw(8) << "1/h" << std::setw(16) << "|u_h-Q_hu|_1,h" << std::setw(10)
        << "order" << std::setw(16) << "||u_0-Q_0u||" << "order\n";
    for (const ErrorRow& r : rows)
        out << std::left << std::setw(8) << r.inv_h << std::setw(16) << format_error(r.h1_error)
            << std::setw(10) << format_order(r.h1_order) << std::setw(16) << format_error(r.l2_error)
            << format_order(r.l2_order) << '\n';
}

} // namespace iwg
