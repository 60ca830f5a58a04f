#include "lake/spectral.hpp"

#include <fftw3.h>

#include <mutex>

namespace lake {
namespace {
// FFTW's planner mutates global state.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}
}  // namespace

AngularTransform::AngularTransform(int levels, int n_theta)
    : levels_(levels), n_theta_(n_theta) {
    scratch_real_.resize(static_cast<std::size_t>(levels) * n_theta);
    scratch_cplx_.resize(static_cast<std::size_t>(levels) * n_modes());

    const int n[1] = {n_theta};
    std::lock_guard<std::mutex> lock(planner_mutex());
    // FFTW_UNALIGNED: plans must accept plain vector storage via the
    // new-array execute interface.
    plan_fwd_ = fftw_plan_many_dft_r2c(
        1, n, levels, scratch_real_.data(), nullptr, 1, n_theta,
        reinterpret_cast<fftw_complex*>(scratch_cplx_.data()), nullptr, 1, n_modes(),
        FFTW_ESTIMATE | FFTW_UNALIGNED);
    plan_bwd_ = fftw_plan_many_dft_c2r(
        1, n, levels, reinterpret_cast<fftw_complex*>(scratch_cplx_.data()), nullptr, 1,
        n_modes(), scratch_real_.data(), nullptr, 1, n_theta,
        FFTW_ESTIMATE | FFTW_UNALIGNED);
}

AngularTransform::~AngularTransform() {
    std::lock_guard<std::mutex> lock(planner_mutex());
    if (plan_fwd_) fftw_destroy_plan(static_cast<fftw_plan>(plan_fwd_));
    if (plan_bwd_) fftw_destroy_plan(static_cast<fftw_plan>(plan_bwd_));
}

void AngularTransform::forward(const double* in, std::complex<double>* out) const {
    // Out-of-place rank-1 r2c leaves the input untouched.
    fftw_execute_dft_r2c(static_cast<fftw_plan>(plan_fwd_), const_cast<double*>(in),
                         reinterpret_cast<fftw_complex*>(out));
}

void AngularTransform::backward(std::complex<double>* in, double* out) const {
    fftw_execute_dft_c2r(static_cast<fftw_plan>(plan_bwd_),
                         reinterpret_cast<fftw_complex*>(in), out);
    const double scale = 1.0 / n_theta_;
    const std::size_t n = static_cast<std::size_t>(levels_) * n_theta_;
    for (std::size_t k = 0; k < n; ++k) out[k] *= scale;
}

}  // namespace lake
