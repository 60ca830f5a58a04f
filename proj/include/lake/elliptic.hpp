#pragma once
#include <memory>
#include <vector>

#include "lake/bathymetry.hpp"
#include "lake/field.hpp"
#include "lake/operators.hpp"

namespace lake {

struct StreamSolveReport {
    int iterations = 0;
    double residual = 0.0;  // ||A psi - f||_2 / ||f||_2
    bool converged = false;
};

// Discrete operator psi -> div(b_eps^{-1} grad psi) with psi = 0 on the
// boundary ring, assembled in finite-volume form: exactly symmetric and
// negative definite in the cell-volume inner product. Solved by conjugate
// gradients preconditioned with a per-angular-mode radial tridiagonal direct
// solve, which is the exact inverse whenever the coefficient is radial; the
// coefficient contrast grows like 1/eps, so unpreconditioned iteration is
// hopeless.
class StreamOperator {
public:
    explicit StreamOperator(std::shared_ptr<const Bathymetry> bath,
                            double tolerance = 1e-10, int max_iterations = 200);

    double tolerance;
    int max_iterations;

    const Bathymetry& bath() const { return *bath_; }
    const Operators& ops() const { return ops_; }

    // Applies the operator; the boundary ring of psi is read as Dirichlet data.
    ScalarField apply(const ScalarField& psi) const;

    // Inner product in which the operator is symmetric.
    double volume_dot(const ScalarField& x, const ScalarField& y) const;

    ScalarField solve(const ScalarField& f, StreamSolveReport* report = nullptr) const;

private:
    void precondition(const ScalarField& r, ScalarField& z) const;

    std::shared_ptr<const Bathymetry> bath_;
    const Grid& g_;
    Operators ops_;
    std::vector<double> flux_coef_;  // rho_k * c(rho_k) / h_k, k = 0..n_r
    std::vector<double> node_coef_;  // c(r_j), per level
    // Thomas factors per angular mode.
    std::vector<double> thomas_diag_, thomas_sup_;
};

ScalarField solve_stream(const StreamOperator& op, const ScalarField& f,
                         StreamSolveReport* report = nullptr);

struct VelocityRecovery {
    VectorField u;    // Cartesian components
    ScalarField psi;  // stream function, zero on the boundary ring
    StreamSolveReport report;
    double flux_div_residual = 0.0;  // max |div(grad_perp psi)| / max|u|
};

// u = b_eps^{-1} grad_perp(psi) with div(b_eps^{-1} grad psi) = b_eps * omega.
VelocityRecovery velocity_from_vorticity(const ScalarField& omega, const Bathymetry& bath,
                                         const StreamOperator& op);

struct ProbeRow {
    double p = 0.0;
    int sample_id = 0;
    int n_r = 0;
    double epsilon = 0.0;
    double ratio_grad = 0.0;  // ||grad v||_p / (||f||_p + ||b v||_2)
    double ratio_sup = 0.0;   // ||v||_inf / (||f||_p + ||b v||_2)
    bool skipped = false;     // zero denominator
};

// Boundedness probe for the velocity-recovery estimates: v is recovered from
// curl data f and the ratios are tabulated per (f, p).
std::vector<ProbeRow> elliptic_estimate_probe(const Bathymetry& bath,
                                              const StreamOperator& op,
                                              const std::vector<ScalarField>& samples,
                                              const std::vector<double>& p_list);

}  // namespace lake
