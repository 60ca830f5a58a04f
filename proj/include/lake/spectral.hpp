#pragma once
#include <complex>
#include <vector>

#include "lake/grid.hpp"

namespace lake {

// Batched real<->half-complex Fourier transform along the angular direction,
// one batch entry per radial level. Plan creation is serialized internally
// (the planner is not thread-safe); executing on distinct arrays is safe, so
// independent runs may transform concurrently.
class AngularTransform {
public:
    AngularTransform(int levels, int n_theta);
    ~AngularTransform();
    AngularTransform(const AngularTransform&) = delete;
    AngularTransform& operator=(const AngularTransform&) = delete;

    int levels() const { return levels_; }
    int n_theta() const { return n_theta_; }
    int n_modes() const { return n_theta_ / 2 + 1; }

    // real (levels x n_theta) -> coefficients (levels x n_modes), unnormalized
    void forward(const double* in, std::complex<double>* out) const;
    // coefficients -> real, normalized by 1/n_theta. Destroys `in`.
    void backward(std::complex<double>* in, double* out) const;

private:
    int levels_, n_theta_;
    void* plan_fwd_ = nullptr;
    void* plan_bwd_ = nullptr;
    mutable std::vector<double> scratch_real_;
    mutable std::vector<std::complex<double>> scratch_cplx_;
};

}  // namespace lake
