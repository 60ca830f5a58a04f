#pragma once
#include <vector>

#include "lake/field.hpp"
#include "lake/grid.hpp"
#include "lake/spectral.hpp"

namespace lake {

// Discrete derivative suite on one grid.
//
// Radial derivative: second-order centered on the uniform interior rings,
// closed at the axis by the antipodal ghost f(-r, theta) = f(r, theta+pi)
// (valid for scalars and Cartesian vector components), and by second-order
// backward stencils on interior nodes at the rim. Angular derivative:
// pseudo-spectral.
//
// d_r and d_theta commute exactly (the ghost map is a rotation, which the
// spectral derivative commutes with), so div_flux(grad_perp(psi)) vanishes
// identically; the velocity recovery relies on that.
class Operators {
public:
    explicit Operators(const Grid& g, bool dealias = true);

    ScalarField d_r(const ScalarField& f) const;
    ScalarField d_theta(const ScalarField& f) const;

    void to_polar(const VectorField& u, ScalarField& ur, ScalarField& ut) const;
    VectorField to_cartesian(const ScalarField& ur, const ScalarField& ut) const;

    // F = grad_perp(psi): F_r = -(1/r) d_theta psi, F_theta = d_r psi.
    void grad_perp(const ScalarField& psi, ScalarField& fr, ScalarField& ft) const;
    // (1/r) (d_r(r F_r) + d_theta F_theta)
    ScalarField div_flux(const ScalarField& fr, const ScalarField& ft) const;
    // (1/r) (d_r(r u_theta) - d_theta u_r)
    ScalarField curl(const ScalarField& ur, const ScalarField& ut) const;

    void cartesian_gradient(const ScalarField& f, ScalarField& fx, ScalarField& fy) const;

    // Finite-volume polar Laplacian, zero Dirichlet value on the boundary ring.
    ScalarField laplacian_dirichlet(const ScalarField& f) const;

    // Zero angular modes above the per-ring cap (axis clustering guard plus
    // 2/3-rule truncation when dealiasing is on).
    void apply_mode_cap(ScalarField& f) const;
    int mode_cap(int level) const { return mode_cap_[level]; }
    bool dealias() const { return dealias_; }

    // Mask-aware effective minimum spacing; the advective CFL length.
    double h_eff() const { return h_eff_; }
    // Diffusion stencil constant: dt_diffusive = cfl * h_eff^2 / (mu * c_diff).
    double c_diff() const { return c_diff_; }

    const Grid& grid() const { return g_; }
    const AngularTransform& transform() const { return ft_; }

private:
    const Grid& g_;
    AngularTransform ft_;
    bool dealias_;
    std::vector<int> mode_cap_;
    double h_eff_ = 0.0;
    double c_diff_ = 0.0;
};

}  // namespace lake
