#pragma once
#include <cmath>
#include <cstddef>
#include <vector>

#include "lake/grid.hpp"

namespace lake {

// Scalar samples on every grid node (interior rings + boundary ring).
struct ScalarField {
    const Grid* grid = nullptr;
    std::vector<double> v;

    ScalarField() = default;
    explicit ScalarField(const Grid& g, double fill = 0.0) : grid(&g), v(g.size(), fill) {}

    double& operator()(int j, int i) { return v[grid->index(j, i)]; }
    double operator()(int j, int i) const { return v[grid->index(j, i)]; }
    std::size_t size() const { return v.size(); }
};

// Vector samples stored as Cartesian components on the polar grid.
struct VectorField {
    const Grid* grid = nullptr;
    std::vector<double> x, y;

    VectorField() = default;
    explicit VectorField(const Grid& g, double fx = 0.0, double fy = 0.0)
        : grid(&g), x(g.size(), fx), y(g.size(), fy) {}

    std::size_t size() const { return x.size(); }
};

inline bool all_finite(const ScalarField& f) {
    for (double a : f.v)
        if (!std::isfinite(a)) return false;
    return true;
}

inline bool all_finite(const VectorField& f) {
    for (std::size_t k = 0; k < f.size(); ++k)
        if (!std::isfinite(f.x[k]) || !std::isfinite(f.y[k])) return false;
    return true;
}

inline double max_abs(const ScalarField& f) {
    double m = 0.0;
    for (double a : f.v) m = std::max(m, std::abs(a));
    return m;
}

inline double max_norm(const VectorField& f) {
    double m = 0.0;
    for (std::size_t k = 0; k < f.size(); ++k)
        m = std::max(m, std::hypot(f.x[k], f.y[k]));
    return m;
}

inline ScalarField magnitude(const VectorField& f) {
    ScalarField out(*f.grid);
    for (std::size_t k = 0; k < f.size(); ++k) out.v[k] = std::hypot(f.x[k], f.y[k]);
    return out;
}

inline ScalarField difference_magnitude(const VectorField& a, const VectorField& b) {
    ScalarField out(*a.grid);
    for (std::size_t k = 0; k < a.size(); ++k)
        out.v[k] = std::hypot(a.x[k] - b.x[k], a.y[k] - b.y[k]);
    return out;
}

}  // namespace lake
