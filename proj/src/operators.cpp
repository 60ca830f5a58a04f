#include "lake/operators.hpp"

#include <cmath>
#include <complex>
#include <numbers>

namespace lake {

namespace {
// SSP-RK3 covers roughly [-2.51, 0] on the negative real axis.
constexpr double kExplicitRealAxis = 2.51;
}

Operators::Operators(const Grid& g, bool dealias)
    : g_(g), ft_(g.levels(), g.n_theta), dealias_(dealias) {
    const int full = g.n_theta / 2;
    const int cap_global = dealias ? std::max(4, g.n_theta / 3) : full;

    mode_cap_.resize(g.levels());
    for (int j = 0; j < g.levels(); ++j) {
        const double r = g.r_nodes[j];
        // Ring-graded floor: smooth fields carry O(r^m) in mode m, so the
        // innermost rings keep only the lowest modes and the diffusive
        // stability limit stays comparable to the radial one.
        const int floor_j = std::min(j + 1, 4);
        const int by_radius =
            std::max(floor_j, static_cast<int>(std::ceil(g.n_theta * r)));
        mode_cap_[j] = std::min(cap_global, by_radius);
    }

    // Effective spacing: radial spacing vs. resolved arclength pi*r/m per ring.
    h_eff_ = g.dr;
    for (int j = 0; j < g.levels(); ++j) {
        const double arc = std::numbers::pi * g.r_nodes[j] / mode_cap_[j];
        h_eff_ = std::min(h_eff_, arc);
    }

    // Largest eigenvalue scale of the capped diffusion stencil (Gershgorin on
    // the radial FV rows plus the spectral angular part).
    double lam = 0.0;
    for (int j = 0; j < g.n_r; ++j) {
        const double rp = g.face_radius(j + 1);
        const double rm = g.face_radius(j);
        const double hp = (j == g.n_r - 1) ? 0.5 * g.dr : g.dr;
        const double hm = g.dr;
        const double radial = 2.0 * (rp / hp + rm / hm) / (g.r_nodes[j] * g.dr);
        const double mr = mode_cap_[j] / g.r_nodes[j];
        lam = std::max(lam, radial + mr * mr);
    }
    c_diff_ = lam * h_eff_ * h_eff_ / kExplicitRealAxis;
}

ScalarField Operators::d_r(const ScalarField& f) const {
    ScalarField out(g_);
    const int nt = g_.n_theta;
    const int nr = g_.n_r;
    const double i2dr = 0.5 / g_.dr;

    for (int i = 0; i < nt; ++i)
        out(0, i) = (f(1, i) - f(0, g_.antipode(i))) * i2dr;
    for (int j = 1; j < nr - 1; ++j)
        for (int i = 0; i < nt; ++i)
            out(j, i) = (f(j + 1, i) - f(j - 1, i)) * i2dr;
    // Rim rows use interior nodes only: stream solutions carry an O(h^2)
    // error that drops to zero at the Dirichlet ring, and a stencil reaching
    // across that jump would differentiate it into an O(h) velocity error.
    {
        const int j = nr - 1;
        for (int i = 0; i < nt; ++i)
            out(j, i) =
                (3.0 * f(j, i) - 4.0 * f(j - 1, i) + f(j - 2, i)) * i2dr;
    }
    for (int i = 0; i < nt; ++i)
        out(nr, i) =
            (2.0 * f(nr - 1, i) - 3.0 * f(nr - 2, i) + f(nr - 3, i)) / g_.dr;
    return out;
}

ScalarField Operators::d_theta(const ScalarField& f) const {
    const int nm = ft_.n_modes();
    std::vector<std::complex<double>> c(static_cast<std::size_t>(g_.levels()) * nm);
    ft_.forward(f.v.data(), c.data());
    const std::complex<double> iu(0.0, 1.0);
    for (int j = 0; j < g_.levels(); ++j)
        for (int m = 0; m < nm; ++m) {
            // Nyquist mode has no well-defined first derivative; drop it.
            const double mm = (m == g_.n_theta / 2) ? 0.0 : static_cast<double>(m);
            c[static_cast<std::size_t>(j) * nm + m] *= iu * mm;
        }
    ScalarField out(g_);
    ft_.backward(c.data(), out.v.data());
    return out;
}

void Operators::to_polar(const VectorField& u, ScalarField& ur, ScalarField& ut) const {
    ur = ScalarField(g_);
    ut = ScalarField(g_);
    for (int j = 0; j < g_.levels(); ++j)
        for (int i = 0; i < g_.n_theta; ++i) {
            const auto k = g_.index(j, i);
            ur.v[k] = u.x[k] * g_.cos_theta[i] + u.y[k] * g_.sin_theta[i];
            ut.v[k] = -u.x[k] * g_.sin_theta[i] + u.y[k] * g_.cos_theta[i];
        }
}

VectorField Operators::to_cartesian(const ScalarField& ur, const ScalarField& ut) const {
    VectorField u(g_);
    for (int j = 0; j < g_.levels(); ++j)
        for (int i = 0; i < g_.n_theta; ++i) {
            const auto k = g_.index(j, i);
            u.x[k] = ur.v[k] * g_.cos_theta[i] - ut.v[k] * g_.sin_theta[i];
            u.y[k] = ur.v[k] * g_.sin_theta[i] + ut.v[k] * g_.cos_theta[i];
        }
    return u;
}

void Operators::grad_perp(const ScalarField& psi, ScalarField& fr, ScalarField& ft) const {
    fr = d_theta(psi);
    for (int j = 0; j < g_.levels(); ++j) {
        const double ir = -1.0 / g_.r_nodes[j];
        for (int i = 0; i < g_.n_theta; ++i) fr(j, i) *= ir;
    }
    ft = d_r(psi);
}

ScalarField Operators::div_flux(const ScalarField& fr, const ScalarField& ft) const {
    ScalarField rfr(g_);
    for (int j = 0; j < g_.levels(); ++j)
        for (int i = 0; i < g_.n_theta; ++i) rfr(j, i) = g_.r_nodes[j] * fr(j, i);
    ScalarField a = d_r(rfr);
    ScalarField b = d_theta(ft);
    ScalarField out(g_);
    for (int j = 0; j < g_.levels(); ++j) {
        const double ir = 1.0 / g_.r_nodes[j];
        for (int i = 0; i < g_.n_theta; ++i) out(j, i) = ir * (a(j, i) + b(j, i));
    }
    return out;
}

ScalarField Operators::curl(const ScalarField& ur, const ScalarField& ut) const {
    ScalarField rut(g_);
    for (int j = 0; j < g_.levels(); ++j)
        for (int i = 0; i < g_.n_theta; ++i) rut(j, i) = g_.r_nodes[j] * ut(j, i);
    ScalarField a = d_r(rut);
    ScalarField b = d_theta(ur);
    ScalarField out(g_);
    for (int j = 0; j < g_.levels(); ++j) {
        const double ir = 1.0 / g_.r_nodes[j];
        for (int i = 0; i < g_.n_theta; ++i) out(j, i) = ir * (a(j, i) - b(j, i));
    }
    return out;
}

void Operators::cartesian_gradient(const ScalarField& f, ScalarField& fx,
                                   ScalarField& fy) const {
    ScalarField fr = d_r(f);
    ScalarField ftheta = d_theta(f);
    fx = ScalarField(g_);
    fy = ScalarField(g_);
    for (int j = 0; j < g_.levels(); ++j) {
        const double ir = 1.0 / g_.r_nodes[j];
        for (int i = 0; i < g_.n_theta; ++i) {
            const auto k = g_.index(j, i);
            const double dfr = fr.v[k];
            const double dft = ftheta.v[k] * ir;
            fx.v[k] = g_.cos_theta[i] * dfr - g_.sin_theta[i] * dft;
            fy.v[k] = g_.sin_theta[i] * dfr + g_.cos_theta[i] * dft;
        }
    }
}

ScalarField Operators::laplacian_dirichlet(const ScalarField& f) const {
    ScalarField out(g_);
    const int nt = g_.n_theta;
    const int nr = g_.n_r;

    for (int j = 0; j < nr; ++j) {
        const double rp = g_.face_radius(j + 1);
        const double rm = g_.face_radius(j);
        const double hp = (j == nr - 1) ? 0.5 * g_.dr : g_.dr;
        const double scale = 1.0 / (g_.r_nodes[j] * g_.dr);
        for (int i = 0; i < nt; ++i) {
            const double up = (j == nr - 1) ? 0.0 : f(j + 1, i);
            const double fp = rp * (up - f(j, i)) / hp;
            const double fm = (j == 0) ? 0.0 : rm * (f(j, i) - f(j - 1, i)) / g_.dr;
            out(j, i) = scale * (fp - fm);
        }
    }

    // angular part (1/r^2) d_theta^2, Nyquist retained
    const int nm = ft_.n_modes();
    std::vector<std::complex<double>> c(static_cast<std::size_t>(g_.levels()) * nm);
    ft_.forward(f.v.data(), c.data());
    for (int j = 0; j < g_.levels(); ++j)
        for (int m = 0; m < nm; ++m)
            c[static_cast<std::size_t>(j) * nm + m] *= -static_cast<double>(m) * m;
    ScalarField tt(g_);
    ft_.backward(c.data(), tt.v.data());
    for (int j = 0; j < nr; ++j) {
        const double ir2 = 1.0 / (g_.r_nodes[j] * g_.r_nodes[j]);
        for (int i = 0; i < nt; ++i) out(j, i) += ir2 * tt(j, i);
    }
    // boundary ring carries Dirichlet data; no equation there
    for (int i = 0; i < nt; ++i) out(nr, i) = 0.0;
    return out;
}

void Operators::apply_mode_cap(ScalarField& f) const {
    const int nm = ft_.n_modes();
    std::vector<std::complex<double>> c(static_cast<std::size_t>(g_.levels()) * nm);
    ft_.forward(f.v.data(), c.data());
    for (int j = 0; j < g_.levels(); ++j)
        for (int m = mode_cap_[j] + 1; m < nm; ++m)
            c[static_cast<std::size_t>(j) * nm + m] = 0.0;
    ft_.backward(c.data(), f.v.data());
}

}  // namespace lake
