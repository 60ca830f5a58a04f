#include "lake/grid.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "lake/errors.hpp"

namespace lake {
namespace {

// End corrections to the composite midpoint rule, in units of the panel
// width. With these, sum_j w_j F(r_j) integrates polynomials F of degree <= 5
// exactly at every panel count (the Euler-Maclaurin error of the midpoint
// rule terminates there and each end functional is matched identically), so
// radial integrands g of degree <= 4 are exact against the r dr measure.
// Minimum-norm solution over eight nodes per end; both ends share the same
// coefficients and every corrected weight stays positive.
constexpr int kCorrNodes = 8;
constexpr double kEndCorrection[kCorrNodes] = {
    45493.0 / 329472.0,    -142537.0 / 549120.0,  10813.0 / 149760.0,
    231403.0 / 1647360.0,  -29173.0 / 549120.0,   -197411.0 / 1647360.0,
    59701.0 / 549120.0,    -14791.0 / 549120.0,
};

std::vector<double> corrected_radial_weights(const std::vector<double>& r, double dr,
                                             int n_r) {
    std::vector<double> w(n_r);
    for (int j = 0; j < n_r; ++j) {
        double corr = 0.0;
        if (j < kCorrNodes) corr += kEndCorrection[j];
        if (n_r - 1 - j < kCorrNodes) corr += kEndCorrection[n_r - 1 - j];
        w[j] = r[j] * dr * (1.0 + corr);
        if (w[j] <= 0.0) throw NumericError("radial quadrature weight not positive");
    }

    // spot-check the exactness the corrections promise
    double m0 = 0.0, m3 = 0.0;
    for (int j = 0; j < n_r; ++j) {
        m0 += w[j];
        m3 += w[j] * r[j] * r[j] * r[j];
    }
    if (std::abs(m0 - 0.5) > 1e-13 || std::abs(m3 - 0.2) > 1e-13)
        throw NumericError("radial quadrature moments inconsistent");
    return w;
}

}  // namespace

Grid build_grid(int n_r, int n_theta) {
    if (n_r < 8) throw std::invalid_argument("build_grid: n_r must be >= 8");
    if (n_theta < 8) throw std::invalid_argument("build_grid: n_theta must be >= 8");
    if (n_theta % 2 != 0)
        throw std::invalid_argument("build_grid: n_theta must be even");

    Grid g;
    g.n_r = n_r;
    g.n_theta = n_theta;
    g.dr = 1.0 / n_r;
    g.dtheta = 2.0 * std::numbers::pi / n_theta;

    g.r_nodes.resize(g.levels());
    for (int j = 0; j < n_r; ++j) g.r_nodes[j] = (j + 0.5) * g.dr;
    g.r_nodes[n_r] = 1.0;

    g.theta_nodes.resize(n_theta);
    g.cos_theta.resize(n_theta);
    g.sin_theta.resize(n_theta);
    for (int i = 0; i < n_theta; ++i) {
        g.theta_nodes[i] = i * g.dtheta;
        g.cos_theta[i] = std::cos(g.theta_nodes[i]);
        g.sin_theta[i] = std::sin(g.theta_nodes[i]);
    }

    g.cell_volume_r.resize(n_r);
    for (int j = 0; j < n_r; ++j) g.cell_volume_r[j] = g.r_nodes[j] * g.dr;

    g.radial_weight = corrected_radial_weights(g.r_nodes, g.dr, n_r);

    g.quad_weights.assign(g.size(), 0.0);
    for (int j = 0; j < n_r; ++j)
        for (int i = 0; i < n_theta; ++i)
            g.quad_weights[g.index(j, i)] = g.radial_weight[j] * g.dtheta;

    g.boundary_weights.assign(n_theta, g.dtheta);
    return g;
}

}  // namespace lake
