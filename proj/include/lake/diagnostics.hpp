#pragma once
#include <vector>

#include "lake/dynamics.hpp"

namespace lake {

// Per-step and per-snapshot series recorded along a run. The energy is
// tracked under both the regularized and the true depth weight; the
// dissipation statements hold discretely for the regularized one.
struct DiagnosticsSeries {
    std::vector<double> times;
    std::vector<double> energy;          // integral of |u|^2 b_eps
    std::vector<double> energy_true_b;   // integral of |u|^2 b
    std::vector<double> boundary_drag;   // 2 mu * contour kappa |u.tau|^2 b_eps
    std::vector<double> enstrophy_q2;    // ||b^{1/2} omega||_2
    std::vector<double> enstrophy_qcfg;  // ||b^{1/q} omega||_q at the config q
    std::vector<double> omega_max;
    std::vector<double> dt_used;         // 0 for the initial record
    std::vector<double> flux_div_residual;

    std::vector<double> snapshot_times;  // snapshot-cadence entries
    std::vector<double> grad_energy;     // integral of |grad u|^2 b at snapshots
    std::vector<double> yudovich;        // yudovich_L at snapshots

    std::vector<double> balance_times;   // filled post-run from snapshot windows
    std::vector<double> balance_residual;
};

double energy(const SimState& s);                 // b_eps weight
double energy_true_b(const SimState& s);
double boundary_drag(const SimState& s, const Operators& ops, bool regularized = true);
double deformation_energy(const SimState& s, const Operators& ops);  // int D:D b_eps
double divergence_energy(const SimState& s, const Operators& ops);   // int (div u)^2 b_eps
double grad_energy(const SimState& s, const Operators& ops, bool regularized = false);
double weighted_enstrophy(const SimState& s, double q);  // ||b^{1/q} omega||_q, true b

// max over p in [3, p_max] of (1/p) ||grad u||_p (unweighted p-norms).
double yudovich_L(const VectorField& u, const Bathymetry& bath, const Operators& ops,
                  int p_max = 40);

// Max over boundary nodes of |D(u)n.tau + kappa (u.tau) - (1/2) curl u|,
// one-sided radial stencils at the rim.
double navier_identity_residual(const VectorField& u, const Bathymetry& bath,
                                const Operators& ops);

// |centered dE/dt + 2mu int D:D b - mu int (div u)^2 b + 2mu drag| at the
// interior snapshots of a uniformly spaced window (>= 3 entries), normalized
// by max(mu int D:D b, 1); returns the worst interior value.
double energy_balance_residual(const std::vector<SimState>& window, double mu,
                               const Operators& ops);

}  // namespace lake
