#include "lake/dynamics.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "lake/errors.hpp"

namespace lake {

ScalarField initial_vorticity(const Grid& g, const InitialData& init) {
    ScalarField w(g);
    const double A = init.amplitude;
    for (int j = 0; j < g.levels(); ++j) {
        const double r = g.r_nodes[j];
        for (int i = 0; i < g.n_theta; ++i) {
            const double x = r * g.cos_theta[i];
            const double y = r * g.sin_theta[i];
            double v = 0.0;
            if (init.type == "radial_bump") {
                v = A * (1.0 - r * r);
            } else if (init.type == "gaussian") {
                const double dx = x - init.center_x;
                const double dy = y - init.center_y;
                v = A * std::exp(-(dx * dx + dy * dy) / (2.0 * init.sigma * init.sigma));
            } else if (init.type == "patch") {
                const double dx = x - init.center_x;
                const double dy = y - init.center_y;
                const double d = std::hypot(dx, dy);
                v = 0.5 * A * (1.0 - std::tanh((d - init.radius) / init.width));
            } else if (init.type == "dipole") {
                const double s = 0.5 * init.separation;
                const double d1 = std::hypot(x - init.center_x, y - init.center_y - s);
                const double d2 = std::hypot(x - init.center_x, y - init.center_y + s);
                const double s2 = 2.0 * init.sigma * init.sigma;
                v = A * (std::exp(-d1 * d1 / s2) - std::exp(-d2 * d2 / s2));
            } else {
                throw std::invalid_argument("initial_vorticity: unknown type " + init.type);
            }
            w(j, i) = v;
        }
    }
    for (int i = 0; i < g.n_theta; ++i) w(g.n_r, i) = 0.0;
    return w;
}

double cfl_dt_formula(double u_max, double h, double cfl_advective, double mu,
                      double cfl_diffusive, double c_diff, double dt_max) {
    if (!std::isfinite(u_max)) throw NumericError("cfl_dt: velocity max-norm not finite");
    double dt = dt_max;
    if (u_max > 0.0) dt = std::min(dt, cfl_advective * h / u_max);
    if (mu > 0.0) dt = std::min(dt, cfl_diffusive * h * h / (mu * c_diff));
    return dt;
}

VorticityDynamics::VorticityDynamics(std::shared_ptr<const Bathymetry> bath,
                                     SchemeConfig scheme, double solver_tol,
                                     int solver_max_iter)
    : bath_(std::move(bath)), scheme_(std::move(scheme)),
      ops_(*bath_->grid, scheme_.dealias),
      stream_(bath_, solver_tol, solver_max_iter) {
    if (scheme_.scheme != "ssprk3")
        throw std::invalid_argument("VorticityDynamics: unknown scheme " + scheme_.scheme);
}

void VorticityDynamics::bc_and_cap(ScalarField& w) const {
    const Grid& g = *bath_->grid;
    for (int i = 0; i < g.n_theta; ++i) w(g.n_r, i) = 0.0;
    ops_.apply_mode_cap(w);
    for (int i = 0; i < g.n_theta; ++i) w(g.n_r, i) = 0.0;
}

void VorticityDynamics::recover(SimState& s) const {
    VelocityRecovery rec = velocity_from_vorticity(s.omega, *bath_, stream_);
    s.u = std::move(rec.u);
    s.psi = std::move(rec.psi);
    s.flux_div_residual = rec.flux_div_residual;
    s.solve_report = rec.report;
}

SimState VorticityDynamics::make_state(ScalarField omega0, double mu) const {
    if (mu < 0.0) throw std::invalid_argument("make_state: mu must be >= 0");
    if (mu > 0.0) bath_->require_ln_fields();
    SimState s;
    s.t = 0.0;
    s.mu = mu;
    s.bath = bath_;
    s.omega = std::move(omega0);
    bc_and_cap(s.omega);
    recover(s);
    return s;
}

ScalarField VorticityDynamics::compute_G(const VectorField& u) const {
    bath_->require_ln_fields();
    if (!all_finite(u)) throw NumericError("compute_G: non-finite velocity");
    const Grid& g = *bath_->grid;
    const Bathymetry& b = *bath_;

    ScalarField ur, ut;
    ops_.to_polar(u, ur, ut);
    ScalarField zeta = ops_.curl(ur, ut);

    ScalarField ux(g), uy(g);
    ux.v = u.x;
    uy.v = u.y;
    ScalarField gxx, gxy, gyx, gyy;
    ops_.cartesian_gradient(ux, gxx, gxy);
    ops_.cartesian_gradient(uy, gyx, gyy);

    ScalarField dtheta_ur = ops_.d_theta(ur);

    ScalarField G(g);
    for (int j = 0; j < g.levels(); ++j) {
        const double be = b.b_eps_r[j];
        const double lam = b.lam_r[j];
        const double coef0 = b.lap_b_r[j] / be + lam * lam;  // multiplies omega
        const double hess = (b.dlam_r[j] - lam / g.r_nodes[j]) / be;
        const double t3c = -lam * lam / (g.r_nodes[j] * be);
        for (int i = 0; i < g.n_theta; ++i) {
            const auto k = g.index(j, i);
            const double omega_u = zeta.v[k] / be;
            const double P = gxx.v[k] - gyy.v[k];
            const double Q = gxy.v[k] + gyx.v[k];
            const double c2 = g.cos_theta[i] * g.cos_theta[i] -
                              g.sin_theta[i] * g.sin_theta[i];
            const double s2 = 2.0 * g.sin_theta[i] * g.cos_theta[i];
            G.v[k] = coef0 * omega_u + hess * (Q * c2 - P * s2) + t3c * dtheta_ur.v[k];
        }
    }
    return G;
}

ScalarField VorticityDynamics::rhs_fields(const ScalarField& omega,
                                          const VectorField& u) const {
    const Grid& g = *bath_->grid;
    ScalarField ur, ut;
    ops_.to_polar(u, ur, ut);
    ScalarField drw = ops_.d_r(omega);
    ScalarField dtw = ops_.d_theta(omega);

    ScalarField out(g);
    for (int j = 0; j < g.levels(); ++j) {
        const double ir = 1.0 / g.r_nodes[j];
        for (int i = 0; i < g.n_theta; ++i) {
            const auto k = g.index(j, i);
            out.v[k] = -(ur.v[k] * drw.v[k] + ut.v[k] * ir * dtw.v[k]);
        }
    }
    return out;
}

ScalarField VorticityDynamics::rhs(const SimState& s) const {
    const Grid& g = *bath_->grid;
    ScalarField out = rhs_fields(s.omega, s.u);

    if (s.mu > 0.0) {
        bath_->require_ln_fields();
        ScalarField lap = ops_.laplacian_dirichlet(s.omega);
        ScalarField drw = ops_.d_r(s.omega);
        ScalarField G = compute_G(s.u);
        for (int j = 0; j < g.levels(); ++j) {
            const double lam3 = 3.0 * bath_->lam_r[j];
            for (int i = 0; i < g.n_theta; ++i) {
                const auto k = g.index(j, i);
                out.v[k] += s.mu * (lap.v[k] + lam3 * drw.v[k] + G.v[k]);
            }
        }
    }
    for (int i = 0; i < g.n_theta; ++i) out(g.n_r, i) = 0.0;

    for (int j = 0; j < g.levels(); ++j)
        for (int i = 0; i < g.n_theta; ++i)
            if (!std::isfinite(out(j, i))) {
                char msg[128];
                std::snprintf(msg, sizeof msg,
                              "rhs: non-finite value at ring %d angle %d (r=%.6f)", j, i,
                              g.r_nodes[j]);
                throw NumericError(msg);
            }
    return out;
}

double VorticityDynamics::cfl_dt(const SimState& s) const {
    return cfl_dt_formula(max_norm(s.u), ops_.h_eff(), scheme_.cfl_advective, s.mu,
                          scheme_.cfl_diffusive, ops_.c_diff(), scheme_.dt_max);
}

SimState VorticityDynamics::step(const SimState& s, double dt) const {
    if (!(dt > 0.0)) throw std::invalid_argument("step: dt must be > 0");
    const std::size_t n = s.omega.v.size();
    const double w0max = max_abs(s.omega);

    SimState s1 = s;  // stage scratch, reuses bath pointer
    ScalarField k = rhs(s);
    s1.omega = s.omega;
    for (std::size_t m = 0; m < n; ++m) s1.omega.v[m] += dt * k.v[m];
    bc_and_cap(s1.omega);
    recover(s1);

    k = rhs(s1);
    for (std::size_t m = 0; m < n; ++m)
        s1.omega.v[m] = 0.75 * s.omega.v[m] + 0.25 * (s1.omega.v[m] + dt * k.v[m]);
    bc_and_cap(s1.omega);
    recover(s1);

    k = rhs(s1);
    for (std::size_t m = 0; m < n; ++m)
        s1.omega.v[m] = (s.omega.v[m] + 2.0 * (s1.omega.v[m] + dt * k.v[m])) / 3.0;
    bc_and_cap(s1.omega);
    recover(s1);

    const double w1max = max_abs(s1.omega);
    if (w1max > 10.0 * std::max(w0max, 1e-12)) {
        char msg[160];
        std::snprintf(msg, sizeof msg,
                      "step: blow-up guard tripped at t=%.6f (max|omega| %.3e -> %.3e)",
                      s.t, w0max, w1max);
        throw NumericError(msg);
    }
    s1.t = s.t + dt;
    return s1;
}

}  // namespace lake
