#include "lake/elliptic.hpp"

#include <cmath>
#include <complex>
#include <cstdio>
#include <stdexcept>

#include "lake/errors.hpp"

namespace lake {

StreamOperator::StreamOperator(std::shared_ptr<const Bathymetry> bath, double tol,
                               int max_iter)
    : tolerance(tol), max_iterations(max_iter), bath_(std::move(bath)),
      g_(*bath_->grid), ops_(g_) {
    if (!(bath_->epsilon > 0.0) && bath_->profile == Bathymetry::Profile::PowerLaw)
        throw std::invalid_argument(
            "StreamOperator: degenerate coefficient needs eps > 0");

    const int nr = g_.n_r;
    flux_coef_.assign(nr + 1, 0.0);
    for (int k = 1; k <= nr; ++k) {
        const double rho = g_.face_radius(k);
        const double h = (k == nr) ? 0.5 * g_.dr : g_.dr;
        flux_coef_[k] = rho / (bath_->b_eps_at(rho) * h);
    }
    node_coef_.resize(g_.levels());
    for (int j = 0; j < g_.levels(); ++j) node_coef_[j] = 1.0 / bath_->b_eps_r[j];

    // Thomas factorization of the per-mode radial tridiagonals of -A.
    const int nm = g_.n_theta / 2 + 1;
    thomas_diag_.resize(static_cast<std::size_t>(nm) * nr);
    thomas_sup_.resize(static_cast<std::size_t>(nm) * nr);
    for (int m = 0; m < nm; ++m) {
        double* dia = &thomas_diag_[static_cast<std::size_t>(m) * nr];
        double* sup = &thomas_sup_[static_cast<std::size_t>(m) * nr];
        for (int j = 0; j < nr; ++j) {
            const double scale = 1.0 / (g_.r_nodes[j] * g_.dr);
            const double diag = scale * (flux_coef_[j] + flux_coef_[j + 1]) +
                                static_cast<double>(m) * m * node_coef_[j] /
                                    (g_.r_nodes[j] * g_.r_nodes[j]);
            const double off = -scale * flux_coef_[j + 1];  // coupling j <-> j+1 in -A
            sup[j] = off;
            dia[j] = diag;
        }
        // forward elimination: rows share sub_j = -scale_j * flux_coef_[j]
        for (int j = 1; j < nr; ++j) {
            const double sub = -flux_coef_[j] / (g_.r_nodes[j] * g_.dr);
            const double w = sub / dia[j - 1];
            dia[j] -= w * sup[j - 1];
        }
    }
}

ScalarField StreamOperator::apply(const ScalarField& psi) const {
    ScalarField out(g_);
    const int nt = g_.n_theta;
    const int nr = g_.n_r;

    for (int j = 0; j < nr; ++j) {
        const double scale = 1.0 / (g_.r_nodes[j] * g_.dr);
        for (int i = 0; i < nt; ++i) {
            const double up = (j == nr - 1) ? psi(nr, i) : psi(j + 1, i);
            const double fp = flux_coef_[j + 1] * (up - psi(j, i));
            const double fm = (j == 0) ? 0.0 : flux_coef_[j] * (psi(j, i) - psi(j - 1, i));
            out(j, i) = scale * (fp - fm);
        }
    }

    // (c_j / r_j^2) * spectral second angular derivative
    const auto& ft = ops_.transform();
    const int nm = ft.n_modes();
    std::vector<std::complex<double>> c(static_cast<std::size_t>(g_.levels()) * nm);
    ft.forward(psi.v.data(), c.data());
    for (int j = 0; j < g_.levels(); ++j)
        for (int m = 0; m < nm; ++m)
            c[static_cast<std::size_t>(j) * nm + m] *= -static_cast<double>(m) * m;
    ScalarField tt(g_);
    ft.backward(c.data(), tt.v.data());
    for (int j = 0; j < nr; ++j) {
        const double s = node_coef_[j] / (g_.r_nodes[j] * g_.r_nodes[j]);
        for (int i = 0; i < nt; ++i) out(j, i) += s * tt(j, i);
    }
    for (int i = 0; i < nt; ++i) out(nr, i) = 0.0;
    return out;
}

double StreamOperator::volume_dot(const ScalarField& x, const ScalarField& y) const {
    double acc = 0.0;
    for (int j = 0; j < g_.n_r; ++j) {
        const double vol = g_.cell_volume_r[j] * g_.dtheta;
        double row = 0.0;
        for (int i = 0; i < g_.n_theta; ++i) row += x(j, i) * y(j, i);
        acc += vol * row;
    }
    return acc;
}

void StreamOperator::precondition(const ScalarField& r, ScalarField& z) const {
    const auto& ft = ops_.transform();
    const int nm = ft.n_modes();
    const int nr = g_.n_r;
    std::vector<std::complex<double>> c(static_cast<std::size_t>(g_.levels()) * nm);
    ft.forward(r.v.data(), c.data());

    // Thomas solve per mode, complex right-hand side, interior levels only.
    for (int m = 0; m < nm; ++m) {
        const double* dia = &thomas_diag_[static_cast<std::size_t>(m) * nr];
        const double* sup = &thomas_sup_[static_cast<std::size_t>(m) * nr];
        auto at = [&](int j) -> std::complex<double>& {
            return c[static_cast<std::size_t>(j) * nm + m];
        };
        for (int j = 1; j < nr; ++j) {
            const double sub = -flux_coef_[j] / (g_.r_nodes[j] * g_.dr);
            at(j) -= (sub / dia[j - 1]) * at(j - 1);
        }
        at(nr - 1) /= dia[nr - 1];
        for (int j = nr - 2; j >= 0; --j) at(j) = (at(j) - sup[j] * at(j + 1)) / dia[j];
        at(nr) = 0.0;  // boundary ring
    }
    z = ScalarField(g_);
    ft.backward(c.data(), z.v.data());
    for (int i = 0; i < g_.n_theta; ++i) z(nr, i) = 0.0;
}

ScalarField StreamOperator::solve(const ScalarField& f, StreamSolveReport* report) const {
    if (!all_finite(f)) throw NumericError("solve_stream: non-finite right-hand side");

    const int nt = g_.n_theta;
    const int nr = g_.n_r;
    auto interior_norm2 = [&](const ScalarField& x) {
        double acc = 0.0;
        for (int j = 0; j < nr; ++j)
            for (int i = 0; i < nt; ++i) acc += x(j, i) * x(j, i);
        return std::sqrt(acc);
    };

    ScalarField psi(g_);
    ScalarField resid(g_);
    for (int j = 0; j < nr; ++j)
        for (int i = 0; i < nt; ++i) resid(j, i) = -f(j, i);  // -f since we solve -A psi = -f

    const double fnorm = interior_norm2(resid);
    StreamSolveReport rep;
    if (fnorm == 0.0) {
        rep.converged = true;
        if (report) *report = rep;
        return psi;
    }

    ScalarField z(g_);
    precondition(resid, z);
    ScalarField p = z;
    double rz = volume_dot(resid, z);

    for (int it = 1; it <= max_iterations; ++it) {
        ScalarField q = apply(p);
        for (double& v : q.v) v = -v;  // -A p
        const double pq = volume_dot(p, q);
        if (pq <= 0.0) throw NumericError("solve_stream: operator lost definiteness");
        const double alpha = rz / pq;
        for (std::size_t k = 0; k < psi.v.size(); ++k) {
            psi.v[k] += alpha * p.v[k];
            resid.v[k] -= alpha * q.v[k];
        }
        for (int i = 0; i < nt; ++i) psi(nr, i) = 0.0;

        rep.iterations = it;
        rep.residual = interior_norm2(resid) / fnorm;
        if (rep.residual <= tolerance) {
            rep.converged = true;
            break;
        }
        precondition(resid, z);
        const double rz_new = volume_dot(resid, z);
        const double beta = rz_new / rz;
        rz = rz_new;
        for (std::size_t k = 0; k < p.v.size(); ++k) p.v[k] = z.v[k] + beta * p.v[k];
    }

    if (!rep.converged) {
        char msg[160];
        std::snprintf(msg, sizeof msg,
                      "solve_stream: iteration limit %d exceeded, residual %.3e",
                      max_iterations, rep.residual);
        throw NumericError(msg);
    }
    if (report) *report = rep;
    return psi;
}

ScalarField solve_stream(const StreamOperator& op, const ScalarField& f,
                         StreamSolveReport* report) {
    return op.solve(f, report);
}

VelocityRecovery velocity_from_vorticity(const ScalarField& omega, const Bathymetry& bath,
                                         const StreamOperator& op) {
    const Grid& g = *bath.grid;
    ScalarField f(g);
    for (int j = 0; j < g.levels(); ++j)
        for (int i = 0; i < g.n_theta; ++i) f(j, i) = bath.b_eps_r[j] * omega(j, i);

    VelocityRecovery out;
    out.psi = op.solve(f, &out.report);

    ScalarField fr, ft;
    op.ops().grad_perp(out.psi, fr, ft);

    ScalarField ur(g), ut(g);
    for (int j = 0; j < g.levels(); ++j) {
        const double ib = 1.0 / bath.b_eps_r[j];
        for (int i = 0; i < g.n_theta; ++i) {
            const auto k = g.index(j, i);
            ur.v[k] = fr.v[k] * ib;
            ut.v[k] = ft.v[k] * ib;
        }
    }
    out.u = op.ops().to_cartesian(ur, ut);

    // structural check: the discrete divergence of the depth-weighted flux
    ScalarField div = op.ops().div_flux(fr, ft);
    const double umax = max_norm(out.u);
    out.flux_div_residual = max_abs(div) / std::max(umax, 1e-300);
    return out;
}

std::vector<ProbeRow> elliptic_estimate_probe(const Bathymetry& bath,
                                              const StreamOperator& op,
                                              const std::vector<ScalarField>& samples,
                                              const std::vector<double>& p_list) {
    if (samples.empty())
        throw std::invalid_argument("elliptic_estimate_probe: no samples");
    for (double p : p_list)
        if (!(p > 2.0))
            throw std::invalid_argument("elliptic_estimate_probe: p must exceed 2");

    const Grid& g = *bath.grid;
    std::vector<ProbeRow> rows;
    for (int s = 0; s < static_cast<int>(samples.size()); ++s) {
        const ScalarField& f = samples[s];
        if (!all_finite(f)) throw NumericError("elliptic_estimate_probe: non-finite sample");

        ScalarField psi = op.solve(f);
        ScalarField fr, ft;
        op.ops().grad_perp(psi, fr, ft);
        ScalarField ur(g), ut(g);
        for (int j = 0; j < g.levels(); ++j) {
            const double ib = 1.0 / bath.b_eps_r[j];
            for (int i = 0; i < g.n_theta; ++i) {
                const auto k = g.index(j, i);
                ur.v[k] = fr.v[k] * ib;
                ut.v[k] = ft.v[k] * ib;
            }
        }
        VectorField v = op.ops().to_cartesian(ur, ut);

        ScalarField vx(g), vy(g);
        vx.v = v.x;
        vy.v = v.y;
        ScalarField gxx, gxy, gyx, gyy;
        op.ops().cartesian_gradient(vx, gxx, gxy);
        op.ops().cartesian_gradient(vy, gyx, gyy);
        ScalarField gradmag(g);
        for (std::size_t k = 0; k < gradmag.v.size(); ++k)
            gradmag.v[k] = std::sqrt(gxx.v[k] * gxx.v[k] + gxy.v[k] * gxy.v[k] +
                                     gyx.v[k] * gyx.v[k] + gyy.v[k] * gyy.v[k]);

        ScalarField bv(g);
        for (int j = 0; j < g.levels(); ++j)
            for (int i = 0; i < g.n_theta; ++i) {
                const auto k = g.index(j, i);
                bv.v[k] = bath.b_r[j] * std::hypot(v.x[k], v.y[k]);
            }
        const double bv2 = weighted_norm(bv, bath, 2.0, 0.0);
        const double vsup = max_norm(v);

        for (double p : p_list) {
            ProbeRow row;
            row.p = p;
            row.sample_id = s;
            row.n_r = g.n_r;
            row.epsilon = bath.epsilon;
            const double fp = weighted_norm(f, bath, p, 0.0);
            const double denom = fp + bv2;
            if (denom == 0.0) {
                row.skipped = true;
            } else {
                row.ratio_grad = weighted_norm(gradmag, bath, p, 0.0) / denom;
                row.ratio_sup = vsup / denom;
            }
            rows.push_back(row);
        }
    }
    return rows;
}

}  // namespace lake
