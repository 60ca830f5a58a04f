#include "lake/diagnostics.hpp"

#include <cmath>
#include <stdexcept>

#include "lake/errors.hpp"

namespace lake {

namespace {

double quad_energy(const SimState& s, const std::vector<double>& depth_r) {
    const Grid& g = *s.bath->grid;
    double acc = 0.0;
    for (int j = 0; j < g.n_r; ++j) {
        const double w = g.radial_weight[j] * g.dtheta * depth_r[j];
        for (int i = 0; i < g.n_theta; ++i) {
            const auto k = g.index(j, i);
            acc += w * (s.u.x[k] * s.u.x[k] + s.u.y[k] * s.u.y[k]);
        }
    }
    return acc;
}

// Cartesian velocity gradient components on every node.
struct GradU {
    ScalarField xx, xy, yx, yy;
};

GradU velocity_gradient(const VectorField& u, const Operators& ops) {
    const Grid& g = *u.grid;
    ScalarField ux(g), uy(g);
    ux.v = u.x;
    uy.v = u.y;
    GradU out;
    ops.cartesian_gradient(ux, out.xx, out.xy);
    ops.cartesian_gradient(uy, out.yx, out.yy);
    return out;
}

}  // namespace

double energy(const SimState& s) { return quad_energy(s, s.bath->b_eps_r); }

double energy_true_b(const SimState& s) { return quad_energy(s, s.bath->b_r); }

double boundary_drag(const SimState& s, const Operators& ops, bool regularized) {
    const Grid& g = *s.bath->grid;
    ScalarField ur, ut;
    ops.to_polar(s.u, ur, ut);
    std::vector<double> f(g.n_theta);
    for (int i = 0; i < g.n_theta; ++i) {
        const double utau = ut(g.n_r, i);
        f[i] = s.bath->kappa[i] * utau * utau;
    }
    return boundary_integral(f, *s.bath,
                             regularized ? BoundaryWeight::Depth : BoundaryWeight::Unweighted);
}

double deformation_energy(const SimState& s, const Operators& ops) {
    const Grid& g = *s.bath->grid;
    GradU gu = velocity_gradient(s.u, ops);
    double acc = 0.0;
    for (int j = 0; j < g.n_r; ++j) {
        const double w = g.radial_weight[j] * g.dtheta * s.bath->b_eps_r[j];
        for (int i = 0; i < g.n_theta; ++i) {
            const auto k = g.index(j, i);
            const double d12 = 0.5 * (gu.xy.v[k] + gu.yx.v[k]);
            acc += w * (gu.xx.v[k] * gu.xx.v[k] + gu.yy.v[k] * gu.yy.v[k] +
                        2.0 * d12 * d12);
        }
    }
    return acc;
}

double divergence_energy(const SimState& s, const Operators& ops) {
    const Grid& g = *s.bath->grid;
    GradU gu = velocity_gradient(s.u, ops);
    double acc = 0.0;
    for (int j = 0; j < g.n_r; ++j) {
        const double w = g.radial_weight[j] * g.dtheta * s.bath->b_eps_r[j];
        for (int i = 0; i < g.n_theta; ++i) {
            const auto k = g.index(j, i);
            const double d = gu.xx.v[k] + gu.yy.v[k];
            acc += w * d * d;
        }
    }
    return acc;
}

double grad_energy(const SimState& s, const Operators& ops, bool regularized) {
    const Grid& g = *s.bath->grid;
    GradU gu = velocity_gradient(s.u, ops);
    const auto& depth = regularized ? s.bath->b_eps_r : s.bath->b_r;
    double acc = 0.0;
    for (int j = 0; j < g.n_r; ++j) {
        const double w = g.radial_weight[j] * g.dtheta * depth[j];
        for (int i = 0; i < g.n_theta; ++i) {
            const auto k = g.index(j, i);
            acc += w * (gu.xx.v[k] * gu.xx.v[k] + gu.xy.v[k] * gu.xy.v[k] +
                        gu.yx.v[k] * gu.yx.v[k] + gu.yy.v[k] * gu.yy.v[k]);
        }
    }
    return acc;
}

double weighted_enstrophy(const SimState& s, double q) {
    const double sexp = std::isinf(q) ? 0.0 : 1.0 / q;
    return weighted_norm(s.omega, *s.bath, q, sexp);
}

double yudovich_L(const VectorField& u, const Bathymetry& bath, const Operators& ops,
                  int p_max) {
    if (p_max < 3) throw std::invalid_argument("yudovich_L: p_max must be >= 3");
    const Grid& g = *bath.grid;
    GradU gu = velocity_gradient(u, ops);
    ScalarField mag(g);
    for (std::size_t k = 0; k < mag.v.size(); ++k)
        mag.v[k] = std::sqrt(gu.xx.v[k] * gu.xx.v[k] + gu.xy.v[k] * gu.xy.v[k] +
                             gu.yx.v[k] * gu.yx.v[k] + gu.yy.v[k] * gu.yy.v[k]);
    double best = 0.0;
    for (int p = 3; p <= p_max; ++p)
        best = std::max(best, weighted_norm(mag, bath, static_cast<double>(p), 0.0) / p);
    return best;
}

double navier_identity_residual(const VectorField& u, const Bathymetry& bath,
                                const Operators& ops) {
    if (!all_finite(u)) throw NumericError("navier_identity_residual: non-finite velocity");
    const Grid& g = *bath.grid;
    GradU gu = velocity_gradient(u, ops);
    double worst = 0.0;
    const int j = g.n_r;
    for (int i = 0; i < g.n_theta; ++i) {
        const auto k = g.index(j, i);
        const double nx = g.cos_theta[i], ny = g.sin_theta[i];
        const double tx = -g.sin_theta[i], ty = g.cos_theta[i];
        const double d11 = gu.xx.v[k];
        const double d22 = gu.yy.v[k];
        const double d12 = 0.5 * (gu.xy.v[k] + gu.yx.v[k]);
        const double nDt = nx * (d11 * tx + d12 * ty) + ny * (d12 * tx + d22 * ty);
        const double utau = u.x[k] * tx + u.y[k] * ty;
        const double curl = gu.yx.v[k] - gu.xy.v[k];
        worst = std::max(worst, std::abs(nDt + bath.kappa[i] * utau - 0.5 * curl));
    }
    return worst;
}

double energy_balance_residual(const std::vector<SimState>& window, double mu,
                               const Operators& ops) {
    if (window.size() < 3)
        throw std::invalid_argument("energy_balance_residual: window needs >= 3 snapshots");
    const double ds = window[1].t - window[0].t;
    for (std::size_t k = 1; k < window.size(); ++k)
        if (std::abs((window[k].t - window[k - 1].t) - ds) > 1e-9 * std::max(1.0, ds))
            throw std::invalid_argument("energy_balance_residual: nonuniform window");

    double worst = 0.0;
    for (std::size_t k = 1; k + 1 < window.size(); ++k) {
        const double dEdt = (energy(window[k + 1]) - energy(window[k - 1])) / (2.0 * ds);
        const double dd = deformation_energy(window[k], ops);
        const double dv = divergence_energy(window[k], ops);
        const double drag = boundary_drag(window[k], ops, true);
        const double resid = dEdt + 2.0 * mu * dd - mu * dv + 2.0 * mu * drag;
        worst = std::max(worst, std::abs(resid) / std::max(mu * dd, 1.0));
    }
    return worst;
}

}  // namespace lake
