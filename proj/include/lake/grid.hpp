// Polar grid of the unit disk: staggered interior rings plus a boundary ring.
#pragma once
#include <cstddef>
#include <vector>

namespace lake {

// Node layout is level-major. Levels 0..n_r-1 are interior rings at
// r_j = (j+1/2)*dr (no node at the axis), level n_r is the boundary ring at
// r = 1. Each level carries n_theta equispaced angles theta_i = i*dtheta.
//
// Two radial weight sets coexist:
//   - quad_weights: midpoint weights with end corrections so that radial
//     polynomial integrands up to degree 6 are integrated exactly
//     (sum = pi to rounding). Used for all norms and integrals.
//   - cell_volume: plain midpoint cell volumes r_j*dr (per ring). Used by the
//     discrete elliptic operator, whose symmetry is exact in that pairing.
// Boundary-ring nodes carry zero area weight; their arclength weights sum
// to 2*pi.
struct Grid {
    int n_r = 0;
    int n_theta = 0;
    double dr = 0.0;
    double dtheta = 0.0;

    std::vector<double> r_nodes;           // size n_r+1, in (0,1]
    std::vector<double> theta_nodes;       // size n_theta
    std::vector<double> cos_theta;         // cached per angle
    std::vector<double> sin_theta;
    std::vector<double> radial_weight;     // corrected, size n_r (interior rings)
    std::vector<double> quad_weights;      // per node, size levels()*n_theta
    std::vector<double> boundary_weights;  // per boundary node, size n_theta
    std::vector<double> cell_volume_r;     // r_j*dr, size n_r

    int levels() const { return n_r + 1; }
    std::size_t size() const { return static_cast<std::size_t>(levels()) * n_theta; }
    std::size_t index(int j, int i) const { return static_cast<std::size_t>(j) * n_theta + i; }
    bool boundary_level(int j) const { return j == n_r; }
    double face_radius(int k) const { return k * dr; }  // k = 0..n_r, face n_r is r=1

    // angle index shifted by pi; n_theta even makes this exact
    int antipode(int i) const { return (i + n_theta / 2) % n_theta; }
};

// Construct the grid. n_r >= 8, n_theta >= 8 and even.
Grid build_grid(int n_r, int n_theta);

}  // namespace lake
