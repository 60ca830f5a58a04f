#include "lake/bathymetry.hpp"

#include <cmath>
#include <stdexcept>

#include "lake/errors.hpp"

namespace lake {

double Bathymetry::b_at(double r) const {
    if (profile == Profile::Constant) return depth;
    const double phi = 1.0 - r * r;
    return std::pow(phi, a);
}

double Bathymetry::db_at(double r) const {
    if (profile == Profile::Constant) return 0.0;
    const double phi = 1.0 - r * r;
    return -2.0 * a * r * std::pow(phi, a - 1.0);
}

double Bathymetry::d2b_at(double r) const {
    if (profile == Profile::Constant) return 0.0;
    const double phi = 1.0 - r * r;
    return -2.0 * a * std::pow(phi, a - 1.0) +
           4.0 * a * (a - 1.0) * r * r * std::pow(phi, a - 2.0);
}

bool Bathymetry::has_ln_fields() const {
    return epsilon > 0.0 || profile == Profile::Constant;
}

void Bathymetry::require_ln_fields() const {
    if (!has_ln_fields())
        throw NumericError(
            "ln(depth) fields are undefined at eps = 0 on a degenerate profile; "
            "use eps > 0");
}

namespace {

Bathymetry build(std::shared_ptr<const Grid> grid, Bathymetry::Profile profile, double a,
                 double depth, double epsilon) {
    const Grid& g = *grid;
    Bathymetry bath;
    bath.grid = std::move(grid);
    bath.profile = profile;
    bath.a = a;
    bath.depth = depth;
    bath.epsilon = epsilon;

    const int L = g.levels();
    bath.b_r.resize(L);
    bath.b_eps_r.resize(L);
    bath.db_r.resize(L);
    bath.lap_b_r.resize(L);
    bath.lam_r.assign(L, 0.0);
    bath.dlam_r.assign(L, 0.0);

    for (int j = 0; j < L; ++j) {
        const double r = g.r_nodes[j];
        bath.b_r[j] = bath.b_at(r);
        bath.b_eps_r[j] = bath.b_r[j] + epsilon;
        bath.db_r[j] = bath.db_at(r);
        // Laplacian of a radial profile: b'' + b'/r.
        bath.lap_b_r[j] = bath.d2b_at(r) + bath.db_r[j] / r;
        if (bath.has_ln_fields()) {
            const double be = bath.b_eps_r[j];
            bath.lam_r[j] = bath.db_r[j] / be;
            bath.dlam_r[j] = bath.d2b_at(r) / be - bath.lam_r[j] * bath.lam_r[j];
        }
    }

    bath.b = ScalarField(g);
    bath.b_eps = ScalarField(g);
    bath.grad_b = VectorField(g);
    bath.lap_b = ScalarField(g);
    if (bath.has_ln_fields()) bath.grad_ln_b_eps = VectorField(g);

    for (int j = 0; j < L; ++j)
        for (int i = 0; i < g.n_theta; ++i) {
            const auto k = g.index(j, i);
            bath.b.v[k] = bath.b_r[j];
            bath.b_eps.v[k] = bath.b_eps_r[j];
            bath.grad_b.x[k] = bath.db_r[j] * g.cos_theta[i];
            bath.grad_b.y[k] = bath.db_r[j] * g.sin_theta[i];
            bath.lap_b.v[k] = bath.lap_b_r[j];
            if (bath.has_ln_fields()) {
                bath.grad_ln_b_eps.x[k] = bath.lam_r[j] * g.cos_theta[i];
                bath.grad_ln_b_eps.y[k] = bath.lam_r[j] * g.sin_theta[i];
            }
        }

    bath.kappa.assign(g.n_theta, 1.0);  // unit circle
    return bath;
}

}  // namespace

Bathymetry eval_bathymetry(std::shared_ptr<const Grid> grid, double a, double epsilon) {
    if (a < 2.0) throw std::invalid_argument("eval_bathymetry: a must be >= 2");
    if (epsilon < 0.0) throw std::invalid_argument("eval_bathymetry: epsilon must be >= 0");
    return build(std::move(grid), Bathymetry::Profile::PowerLaw, a, 1.0, epsilon);
}

Bathymetry constant_bathymetry(std::shared_ptr<const Grid> grid, double depth,
                               double epsilon) {
    if (depth <= 0.0) throw std::invalid_argument("constant_bathymetry: depth must be > 0");
    if (epsilon < 0.0)
        throw std::invalid_argument("constant_bathymetry: epsilon must be >= 0");
    return build(std::move(grid), Bathymetry::Profile::Constant, 0.0, depth, epsilon);
}

double weighted_norm(const ScalarField& f, const Bathymetry& bath, double q, double s) {
    if (!all_finite(f)) throw NumericError("weighted_norm: non-finite field values");
    const Grid& g = *bath.grid;
    if (std::isinf(q)) return max_abs(f);
    if (q < 1.0) throw std::invalid_argument("weighted_norm: q must be >= 1");

    // Scale out the max to keep high powers in range.
    double m = 0.0;
    for (int j = 0; j < g.levels(); ++j)
        for (int i = 0; i < g.n_theta; ++i) {
            const auto k = g.index(j, i);
            if (g.quad_weights[k] == 0.0) continue;
            const double w = std::pow(bath.b_r[j], s) * std::abs(f.v[k]);
            m = std::max(m, w);
        }
    if (m == 0.0) return 0.0;

    double acc = 0.0;
    for (int j = 0; j < g.levels(); ++j) {
        const double bs = std::pow(bath.b_r[j], s);
        for (int i = 0; i < g.n_theta; ++i) {
            const auto k = g.index(j, i);
            if (g.quad_weights[k] == 0.0) continue;
            acc += g.quad_weights[k] * std::pow(bs * std::abs(f.v[k]) / m, q);
        }
    }
    return m * std::pow(acc, 1.0 / q);
}

double boundary_integral(const std::vector<double>& f, const Bathymetry& bath,
                         BoundaryWeight w) {
    const Grid& g = *bath.grid;
    if (static_cast<int>(f.size()) != g.n_theta)
        throw std::invalid_argument("boundary_integral: sample/boundary size mismatch");
    const double depth = (w == BoundaryWeight::Depth) ? bath.b_eps_r[g.n_r] : 1.0;
    double acc = 0.0;
    for (int i = 0; i < g.n_theta; ++i) acc += f[i] * g.boundary_weights[i];
    return acc * depth;
}

}  // namespace lake
