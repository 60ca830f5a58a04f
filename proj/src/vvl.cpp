#include "lake/vvl.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "lake/errors.hpp"

namespace lake {

namespace {

// Adaptive Simpson quadrature.
double simpson_rec(const std::function<double(double)>& f, double a, double b, double fa,
                   double fm, double fb, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b, double tol) {
    if (a == b) return 0.0;
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson_rec(f, a, b, fa, fm, fb, whole, tol, 60);
}

int thread_budget() {
    if (const char* env = std::getenv("LAKE_THREADS")) {
        const int n = std::atoi(env);
        if (n >= 1) return n;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(std::min(hw, 4u));
}

// Runs jobs [0, n) with at most `threads` workers; each job is independent.
void parallel_for_jobs(int n, const std::function<void(int)>& job) {
    const int workers = std::min(thread_budget(), n);
    if (workers <= 1) {
        for (int k = 0; k < n; ++k) job(k);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (;;) {
                const int k = next.fetch_add(1);
                if (k >= n) return;
                try {
                    job(k);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!error) error = std::current_exception();
                    return;
                }
            }
        });
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

double squared_weighted_diff(const SimState& a, const SimState& b) {
    ScalarField d = difference_magnitude(a.u, b.u);
    const double n = weighted_norm(d, *a.bath, 2.0, 0.5);
    return n * n;
}

const SimState* snapshot_at(const RunResult& run, double t) {
    for (const auto& s : run.snapshots)
        if (std::abs(s.t - t) < 1e-9) return &s;
    return nullptr;
}

struct LineFit {
    double slope = std::numeric_limits<double>::quiet_NaN();
    double rms = 0.0;
    int points = 0;
};

LineFit fit_line(const std::vector<double>& xs, const std::vector<double>& ys) {
    LineFit out;
    const int n = static_cast<int>(xs.size());
    out.points = n;
    if (n < 2) return out;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int k = 0; k < n; ++k) {
        sx += xs[k];
        sy += ys[k];
        sxx += xs[k] * xs[k];
        sxy += xs[k] * ys[k];
    }
    const double det = n * sxx - sx * sx;
    if (det == 0) return out;
    out.slope = (n * sxy - sx * sy) / det;
    const double icept = (sy - out.slope * sx) / n;
    double acc = 0;
    for (int k = 0; k < n; ++k) {
        const double e = ys[k] - (out.slope * xs[k] + icept);
        acc += e * e;
    }
    out.rms = std::sqrt(acc / n);
    return out;
}

// D values smaller than this multiple of the floor are discretization noise
// and stay out of the log-log fits.
constexpr double kFitFloor = 1e-24;

}  // namespace

double osgood_bound(double a, const std::function<double(double)>& modulus,
                    const std::function<double(double)>& rate, double t, double tol) {
    if (a < 0.0) throw std::invalid_argument("osgood_bound: a must be >= 0");
    if (t < 0.0) throw std::invalid_argument("osgood_bound: t must be >= 0");
    if (a == 0.0) return 0.0;
    if (t == 0.0) return a;

    auto inv_modulus = [&](double r) {
        const double w = modulus(r);
        if (!(w > 0.0))
            throw std::invalid_argument("osgood_bound: modulus not positive at r");
        return 1.0 / w;
    };
    // Omega(x) = int_x^1 dr/modulus, signed so x > 1 works too.
    auto omega_of = [&](double x) {
        return x <= 1.0 ? integrate(inv_modulus, x, 1.0, tol)
                        : -integrate(inv_modulus, 1.0, x, tol);
    };

    const double target = omega_of(a) - integrate(rate, 0.0, t, tol);

    // Omega is strictly decreasing; bracket then bisect.
    double lo = a, hi = a;
    double omega_hi = omega_of(hi);
    int guard = 0;
    while (omega_hi > target) {
        hi *= 2.0;
        omega_hi = omega_of(hi);
        if (++guard > 200)
            throw NumericError("osgood_bound: bound does not close (modulus integral "
                               "converges too fast)");
    }
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (omega_of(mid) > target)
            lo = mid;
        else
            hi = mid;
        if (hi - lo <= 1e-14 * hi) break;
    }
    return 0.5 * (lo + hi);
}

double rate_envelope(double gamma0, double mu, double t, double M, double Ctilde,
                     double C) {
    if (gamma0 < 0.0) throw std::invalid_argument("rate_envelope: gamma0 must be >= 0");
    if (mu < 0.0) throw std::invalid_argument("rate_envelope: mu must be >= 0");
    if (!(M > 1.0)) throw std::invalid_argument("rate_envelope: M must be > 1");
    if (!(Ctilde > 0.0)) throw std::invalid_argument("rate_envelope: Ctilde must be > 0");
    if (!(C > 0.0)) throw std::invalid_argument("rate_envelope: C must be > 0");
    const double base = gamma0 + mu * t;
    if (base >= M * M)
        throw std::domain_error("rate_envelope: gamma0 + mu t must stay below M^2");
    const double e = std::exp(-Ctilde * t);
    return C * std::pow(M, 2.0 * (1.0 - e)) * std::pow(base, e);
}

RateReport sweep(const SweepPlan& plan) {
    if (plan.mu_list.empty()) throw std::invalid_argument("sweep: empty mu list");
    for (std::size_t k = 0; k < plan.mu_list.size(); ++k) {
        if (!(plan.mu_list[k] > 0.0))
            throw std::invalid_argument("sweep: viscosities must be > 0");
        if (k > 0 && !(plan.mu_list[k] < plan.mu_list[k - 1] ||
                       plan.mu_list[k] == plan.mu_list[k - 1]))
            throw std::invalid_argument("sweep: mu list must be non-increasing");
    }
    if (plan.comparison_times.empty())
        throw std::invalid_argument("sweep: no comparison times");
    for (double t : plan.comparison_times)
        if (t < 0.0 || t > plan.base.t_end + 1e-12)
            throw std::invalid_argument("sweep: comparison time outside [0, t_end]");

    const int nmu = static_cast<int>(plan.mu_list.size());
    std::vector<RunResult> runs(nmu + 1);  // [0] = inviscid reference
    std::vector<double> extra = plan.comparison_times;
    extra.push_back(0.0);

    parallel_for_jobs(nmu + 1, [&](int k) {
        SolverConfig cfg = plan.base;
        cfg.mu = (k == 0) ? 0.0 : plan.mu_list[k - 1];
        runs[k] = run(cfg, extra);
    });

    RateReport rep;
    rep.times = plan.comparison_times;
    rep.mu_list = plan.mu_list;
    rep.D.assign(rep.times.size(), std::vector<double>(nmu, 0.0));

    for (std::size_t ti = 0; ti < rep.times.size(); ++ti) {
        const SimState* ref = snapshot_at(runs[0], rep.times[ti]);
        if (!ref) throw NumericError("sweep: reference snapshot missing");
        for (int mi = 0; mi < nmu; ++mi) {
            const SimState* s = snapshot_at(runs[mi + 1], rep.times[ti]);
            if (!s) throw NumericError("sweep: comparison snapshot missing");
            rep.D[ti][mi] = squared_weighted_diff(*s, *ref);
        }
    }

    // slope of log D vs log mu per comparison time
    for (std::size_t ti = 0; ti < rep.times.size(); ++ti) {
        std::vector<double> xs, ys;
        for (int mi = 0; mi < nmu; ++mi)
            if (rep.D[ti][mi] > 100.0 * kFitFloor) {
                xs.push_back(std::log(rep.mu_list[mi]));
                ys.push_back(std::log(rep.D[ti][mi]));
            }
        const LineFit f = fit_line(xs, ys);
        rep.alpha.push_back(f.slope);
        rep.alpha_residual.push_back(f.rms);
    }

    // M from its definition, max over the sweep; envelope needs M > 1.
    double M = 0.0;
    for (std::size_t ti = 0; ti < rep.times.size(); ++ti) {
        const SimState* ref = snapshot_at(runs[0], rep.times[ti]);
        for (int mi = 0; mi < nmu; ++mi) {
            const SimState* s = snapshot_at(runs[mi + 1], rep.times[ti]);
            M = std::max(M, max_norm(ref->u) + max_norm(s->u));
        }
    }
    rep.M_observed = M;
    M = std::max(M, 1.0 + 1e-9);

    // gamma0: all runs share omega0, so the t = 0 difference is zero; the log
    // guard floors it at machine epsilon.
    const double gamma0 = std::numeric_limits<double>::epsilon() * 0.0;

    // fit (C, Ctilde): scan Ctilde, take the smallest dominating C >= 1,
    // keep the pair with the least log-slack.
    double best_obj = std::numeric_limits<double>::infinity();
    EnvelopeFit best{M, 1.0, 1.0};
    for (int k = 0; k <= 240; ++k) {
        const double ct = 0.02 * std::pow(1000.0 / 0.02, k / 240.0);  // 0.02 .. 20-ish log sweep
        if (ct > 20.0) break;
        double cmin = 1.0;
        bool ok = true;
        for (std::size_t ti = 0; ti < rep.times.size() && ok; ++ti)
            for (int mi = 0; mi < nmu; ++mi) {
                const double base =
                    rate_envelope(gamma0, rep.mu_list[mi], rep.times[ti], M, ct, 1.0);
                if (!(base > 0.0)) {
                    ok = false;
                    break;
                }
                cmin = std::max(cmin, rep.D[ti][mi] / base);
            }
        if (!ok) continue;
        double obj = 0.0;
        for (std::size_t ti = 0; ti < rep.times.size(); ++ti)
            for (int mi = 0; mi < nmu; ++mi) {
                if (rep.D[ti][mi] <= 100.0 * kFitFloor) continue;
                const double env =
                    cmin * rate_envelope(gamma0, rep.mu_list[mi], rep.times[ti], M, ct, 1.0);
                const double slack = std::log(env) - std::log(rep.D[ti][mi]);
                obj += slack * slack;
            }
        if (obj < best_obj) {
            best_obj = obj;
            best = EnvelopeFit{M, cmin, ct};
        }
    }
    rep.fit = best;

    rep.envelope.assign(rep.times.size(), std::vector<double>(nmu, 0.0));
    rep.max_violation = 0.0;
    for (std::size_t ti = 0; ti < rep.times.size(); ++ti)
        for (int mi = 0; mi < nmu; ++mi) {
            rep.envelope[ti][mi] = rate_envelope(gamma0, rep.mu_list[mi], rep.times[ti],
                                                 best.M, best.Ctilde, best.C);
            if (rep.D[ti][mi] > 0.0)
                rep.max_violation = std::max(
                    rep.max_violation, rep.D[ti][mi] / rep.envelope[ti][mi] - 1.0);
        }
    rep.envelope_ok = rep.max_violation <= 0.05;
    return rep;
}

std::vector<ContinuationRow> epsilon_continuation(const SolverConfig& cfg,
                                                  const std::vector<double>& schedule) {
    if (schedule.empty())
        throw std::invalid_argument("epsilon_continuation: empty schedule");
    for (std::size_t k = 0; k < schedule.size(); ++k) {
        if (!(schedule[k] > 0.0))
            throw std::invalid_argument("epsilon_continuation: levels must be > 0");
        if (k > 0 && !(schedule[k] <= schedule[k - 1]))
            throw std::invalid_argument("epsilon_continuation: schedule must decrease");
    }

    const int n = static_cast<int>(schedule.size());
    std::vector<RunResult> runs(n);
    parallel_for_jobs(n, [&](int k) {
        SolverConfig c = cfg;
        c.epsilon = schedule[k];
        runs[k] = run(c);
    });

    std::vector<ContinuationRow> rows;
    for (int k = 0; k + 1 < n; ++k) {
        const SimState& a = runs[k].snapshots.back();
        const SimState& b = runs[k + 1].snapshots.back();
        ContinuationRow row;
        row.eps_coarse = schedule[k];
        row.eps_fine = schedule[k + 1];
        row.diff = std::sqrt(squared_weighted_diff(a, b));
        rows.push_back(row);
    }
    return rows;
}

UniquenessReport uniqueness_check(const SolverConfig& cfg, double perturbation_scale,
                                  const EnvelopeFit& fit) {
    if (cfg.mu != 0.0)
        throw std::invalid_argument("uniqueness_check: requires mu = 0");
    if (perturbation_scale < 0.0 || perturbation_scale > 1e-10)
        throw std::invalid_argument("uniqueness_check: perturbation scale must be in [0, 1e-10]");

    auto grid = std::make_shared<const Grid>(build_grid(cfg.n_r, cfg.n_theta));
    auto bath = std::make_shared<const Bathymetry>(eval_bathymetry(grid, cfg.a, cfg.epsilon));
    VorticityDynamics dyn(bath, cfg.scheme, cfg.solver_tol, cfg.solver_max_iter);

    ScalarField w0 = initial_vorticity(*grid, cfg.initial);
    ScalarField w1 = w0;
    const double scale = perturbation_scale * std::max(max_abs(w0), 1.0);
    for (int j = 0; j < grid->levels(); ++j) {
        const double r = grid->r_nodes[j];
        const double shape = r * r * (1.0 - r * r);
        for (int i = 0; i < grid->n_theta; ++i)
            w1(j, i) += scale * shape * std::cos(3.0 * grid->theta_nodes[i]);
    }

    // integrate both from the same dt sequence (set by the unperturbed run)
    SimState a = dyn.make_state(std::move(w0), 0.0);
    SimState b = dyn.make_state(std::move(w1), 0.0);

    UniquenessReport rep;
    rep.initial_diff = squared_weighted_diff(a, b);
    const double snap = cfg.snapshot_dt > 0.0 ? cfg.snapshot_dt : cfg.t_end;
    double next_record = 0.0;

    auto record = [&](double t) {
        rep.times.push_back(t);
        rep.diff.push_back(squared_weighted_diff(a, b));
        const double gamma0 = std::max(rep.initial_diff, 1e-300);
        rep.envelope.push_back(rate_envelope(gamma0, 0.0, t, fit.M, fit.Ctilde, fit.C));
    };
    record(0.0);
    next_record = snap;

    while (a.t < cfg.t_end - 1e-12) {
        double dt = dyn.cfl_dt(a);
        if (cfg.dt_fixed > 0.0) dt = std::min(cfg.dt_fixed, dt);
        dt = std::min(dt, next_record - a.t);
        dt = std::min(dt, cfg.t_end - a.t);
        a = dyn.step(a, dt);
        b = dyn.step(b, dt);
        if (a.t >= next_record - 1e-12) {
            record(a.t);
            next_record = std::min(next_record + snap, cfg.t_end);
        }
    }

    rep.below_envelope = true;
    for (std::size_t k = 0; k < rep.times.size(); ++k)
        if (rep.diff[k] > rep.envelope[k]) rep.below_envelope = false;
    return rep;
}

}  // namespace lake
