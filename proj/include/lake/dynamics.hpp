#pragma once
#include <memory>

#include "lake/config.hpp"
#include "lake/elliptic.hpp"
#include "lake/field.hpp"
#include "lake/operators.hpp"

namespace lake {

struct SimState {
    double t = 0.0;
    ScalarField omega;
    ScalarField psi;
    VectorField u;
    double mu = 0.0;
    std::shared_ptr<const Bathymetry> bath;
    double flux_div_residual = 0.0;  // from the last velocity recovery
    StreamSolveReport solve_report;
};

ScalarField initial_vorticity(const Grid& g, const InitialData& init);

// Pure CFL formula: dt = min(cfl_adv*h/umax, cfl_diff*h^2/(mu*c_diff), dt_max).
double cfl_dt_formula(double u_max, double h, double cfl_advective, double mu,
                      double cfl_diffusive, double c_diff, double dt_max);

// Time integration of the regularized vorticity transport
//   d_t w + u.grad w = mu (Lap w + 3 g.grad w + G(u)),   g = grad ln b_eps,
// with w = 0 on the boundary ring and velocity recovered through the stream
// solve after every stage. Explicit SSP-RK3 throughout.
class VorticityDynamics {
public:
    VorticityDynamics(std::shared_ptr<const Bathymetry> bath, SchemeConfig scheme,
                      double solver_tol = 1e-10, int solver_max_iter = 200);

    const Operators& ops() const { return ops_; }
    const StreamOperator& stream() const { return stream_; }
    const Bathymetry& bath() const { return *bath_; }
    const SchemeConfig& scheme() const { return scheme_; }

    // Applies the boundary condition and mode cap to omega0, recovers velocity.
    SimState make_state(ScalarField omega0, double mu) const;

    // Source term of the vorticity form; linear in u, needs ln-depth fields.
    ScalarField compute_G(const VectorField& u) const;

    ScalarField rhs(const SimState& s) const;

    double cfl_dt(const SimState& s) const;

    // One SSP-RK3 step; omega pinned to 0 on the rim and mode-capped after
    // each stage, velocity recovered per stage. Growth of max|omega| beyond
    // 10x in one step aborts.
    SimState step(const SimState& s, double dt) const;

private:
    ScalarField rhs_fields(const ScalarField& omega, const VectorField& u) const;
    void bc_and_cap(ScalarField& w) const;
    void recover(SimState& s) const;

    std::shared_ptr<const Bathymetry> bath_;
    SchemeConfig scheme_;
    Operators ops_;
    StreamOperator stream_;
};

}  // namespace lake
