#pragma once
#include <memory>
#include <vector>

#include "lake/field.hpp"
#include "lake/grid.hpp"

namespace lake {

// Depth profile b(r) and its regularization b_eps = b + eps on a grid.
//
// The production profile is the degenerate power law b = (1-r^2)^a with
// a >= 2, whose derivatives are evaluated in closed form (never by
// differencing samples), so the behavior at the degenerate shoreline is
// exact. A constant-depth variant exists as a test fixture; with b constant
// the dynamics reduce to the usual Navier-Stokes vorticity equation.
struct Bathymetry {
    enum class Profile { PowerLaw, Constant };

    std::shared_ptr<const Grid> grid;
    Profile profile = Profile::PowerLaw;
    double a = 2.0;        // exponent (PowerLaw)
    double depth = 1.0;    // constant value (Constant)
    double epsilon = 0.0;  // regularization

    // Per-node sampled fields.
    ScalarField b;              // depth
    ScalarField b_eps;          // depth + eps
    VectorField grad_b;         // Cartesian components
    ScalarField lap_b;
    VectorField grad_ln_b_eps;  // valid only when ln-fields are defined
    std::vector<double> kappa;  // boundary curvature samples (unit circle: 1)

    // Radial profiles cached per level (index 0..n_r).
    std::vector<double> b_r, b_eps_r, db_r, lap_b_r;
    std::vector<double> lam_r;   // d/dr ln(b_eps)
    std::vector<double> dlam_r;  // d/dr of lam_r

    // Closed-form profile evaluation at arbitrary radius (faces included).
    double b_at(double r) const;
    double db_at(double r) const;   // b'(r)
    double d2b_at(double r) const;  // b''(r)
    double b_eps_at(double r) const { return b_at(r) + epsilon; }

    // ln(b_eps) derivatives are defined when b_eps is bounded away from 0.
    bool has_ln_fields() const;
    // Throws NumericError when the ln-fields are undefined (eps = 0 on a
    // degenerate profile).
    void require_ln_fields() const;
};

// Degenerate profile b = (1-r^2)^a. Rejects a < 2 and eps < 0.
Bathymetry eval_bathymetry(std::shared_ptr<const Grid> grid, double a, double epsilon);

// Constant-depth fixture, b = depth everywhere (boundary included).
Bathymetry constant_bathymetry(std::shared_ptr<const Grid> grid, double depth,
                               double epsilon = 0.0);

// || b^s f ||_{L^q} by quadrature, with the true (unregularized) depth.
// q must be >= 1; q = infinity gives the max norm and ignores s.
double weighted_norm(const ScalarField& f, const Bathymetry& bath, double q, double s);

enum class BoundaryWeight { Unweighted, Depth };  // Depth multiplies by b_eps(1)

// Integral of boundary samples against arclength (optionally depth-weighted).
double boundary_integral(const std::vector<double>& f, const Bathymetry& bath,
                         BoundaryWeight w);

}  // namespace lake
