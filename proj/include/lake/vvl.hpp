#pragma once
#include <functional>
#include <vector>

#include "lake/config.hpp"
#include "lake/runner.hpp"

namespace lake {

// Bound from the Osgood comparison inequality: given
//   rho(t) <= a + int_0^t rate(s) * modulus(rho(s)) ds
// with Omega(x) = int_x^1 dr/modulus(r) divergent at 0, returns the implicit
// bound Omega^{-1}(Omega(a) - int_0^t rate). a = 0 collapses to 0.
double osgood_bound(double a, const std::function<double(double)>& modulus,
                    const std::function<double(double)>& rate, double t,
                    double tol = 1e-13);

// C * M^{2(1-e^{-Ct~ t})} * (gamma0 + mu t)^{e^{-Ct~ t}}; the log-Lipschitz
// stability envelope for the squared depth-weighted velocity difference.
// Requires gamma0 + mu t < M^2 and M > 1.
double rate_envelope(double gamma0, double mu, double t, double M, double Ctilde,
                     double C);

struct EnvelopeFit {
    double M = 2.0;
    double C = 1.0;
    double Ctilde = 1.0;
};

struct SweepPlan {
    SolverConfig base;                     // shared scenario; epsilon is the finest level
    std::vector<double> mu_list;           // strictly decreasing, all > 0
    std::vector<double> comparison_times;  // all <= t_end
};

struct RateReport {
    std::vector<double> times;
    std::vector<double> mu_list;
    std::vector<std::vector<double>> D;         // [time][mu], squared difference norm
    std::vector<double> alpha;                  // fitted slope of log D vs log mu
    std::vector<double> alpha_residual;         // rms residual of each fit
    EnvelopeFit fit;
    std::vector<std::vector<double>> envelope;  // [time][mu]
    double max_violation = 0.0;                 // max D/envelope - 1
    bool envelope_ok = false;
    double M_observed = 0.0;
};

// Runs the mu = 0 reference plus one run per viscosity (concurrently, capped
// by LAKE_THREADS), tabulates D(mu, t) = ||sqrt(b)(u^mu - u^0)(t)||_2^2,
// fits the slopes and the dominating envelope constants.
RateReport sweep(const SweepPlan& plan);

struct ContinuationRow {
    double eps_coarse = 0.0;
    double eps_fine = 0.0;
    double diff = 0.0;  // ||sqrt(b)(u^{e1} - u^{e2})(T)||_2
};

// Reruns the scenario per regularization level; consecutive differences
// shrinking is the desk-scale Cauchy behavior in eps.
std::vector<ContinuationRow> epsilon_continuation(const SolverConfig& cfg,
                                                  const std::vector<double>& schedule);

struct UniquenessReport {
    std::vector<double> times;
    std::vector<double> diff;      // squared weighted difference per snapshot
    std::vector<double> envelope;  // bound at those times
    double initial_diff = 0.0;
    bool below_envelope = false;
};

// Twin inviscid runs from initial data perturbed at solver-tolerance scale;
// the difference must stay below the fitted envelope with mu = 0.
UniquenessReport uniqueness_check(const SolverConfig& cfg, double perturbation_scale,
                                  const EnvelopeFit& fit);

}  // namespace lake
