#include "lake/runner.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "lake/errors.hpp"

namespace lake {

namespace {

std::vector<double> snapshot_times(const SolverConfig& cfg,
                                   const std::vector<double>& extra) {
    std::vector<double> ts{0.0, cfg.t_end};
    if (cfg.snapshot_dt > 0.0) {
        for (int k = 1;; ++k) {
            const double t = k * cfg.snapshot_dt;
            if (t >= cfg.t_end - 1e-12) break;
            ts.push_back(t);
        }
    }
    for (double t : extra)
        if (t >= 0.0 && t <= cfg.t_end + 1e-12) ts.push_back(std::min(t, cfg.t_end));
    std::sort(ts.begin(), ts.end());
    ts.erase(std::unique(ts.begin(), ts.end(),
                         [](double a, double b) { return std::abs(a - b) < 1e-12; }),
             ts.end());
    return ts;
}

void record_step(DiagnosticsSeries& d, const SimState& s, const SolverConfig& cfg,
                 double dt) {
    d.times.push_back(s.t);
    d.energy.push_back(energy(s));
    d.energy_true_b.push_back(energy_true_b(s));
    d.enstrophy_q2.push_back(weighted_enstrophy(s, 2.0));
    d.enstrophy_qcfg.push_back(weighted_enstrophy(s, cfg.q));
    d.omega_max.push_back(max_abs(s.omega));
    d.dt_used.push_back(dt);
    d.flux_div_residual.push_back(s.flux_div_residual);
}

void record_snapshot(DiagnosticsSeries& d, const SimState& s, const Operators& ops,
                     const VorticityDynamics& dyn) {
    d.snapshot_times.push_back(s.t);
    d.grad_energy.push_back(grad_energy(s, ops, false));
    d.yudovich.push_back(yudovich_L(s.u, dyn.bath(), ops));
    d.boundary_drag.push_back(boundary_drag(s, ops, true));
}

}  // namespace

RunResult run(const SolverConfig& cfg, const std::vector<double>& extra_snapshot_times) {
    auto violations = validate(cfg);
    if (!violations.empty()) throw ConfigError(violations);
    if (!(cfg.epsilon > 0.0))
        throw ConfigError({"bathymetry.epsilon: velocity recovery requires epsilon > 0"});

    auto grid = std::make_shared<const Grid>(build_grid(cfg.n_r, cfg.n_theta));
    auto bath = std::make_shared<const Bathymetry>(eval_bathymetry(grid, cfg.a, cfg.epsilon));
    VorticityDynamics dyn(bath, cfg.scheme, cfg.solver_tol, cfg.solver_max_iter);

    SimState state = dyn.make_state(initial_vorticity(*grid, cfg.initial), cfg.mu);

    RunResult out;
    const std::vector<double> snaps = snapshot_times(cfg, extra_snapshot_times);
    std::size_t next_snap = 0;

    record_step(out.diag, state, cfg, 0.0);
    if (next_snap < snaps.size() && std::abs(snaps[next_snap] - state.t) < 1e-12) {
        out.snapshots.push_back(state);
        record_snapshot(out.diag, state, dyn.ops(), dyn);
        ++next_snap;
    }

    while (state.t < cfg.t_end - 1e-12) {
        double dt = dyn.cfl_dt(state);
        if (cfg.dt_fixed > 0.0) dt = std::min(cfg.dt_fixed, dt);
        if (next_snap < snaps.size()) dt = std::min(dt, snaps[next_snap] - state.t);
        dt = std::min(dt, cfg.t_end - state.t);
        if (!(dt > 0.0)) throw NumericError("run: nonpositive step");

        state = dyn.step(state, dt);
        record_step(out.diag, state, cfg, dt);
        if (next_snap < snaps.size() && state.t >= snaps[next_snap] - 1e-12) {
            out.snapshots.push_back(state);
            record_snapshot(out.diag, state, dyn.ops(), dyn);
            ++next_snap;
        }
    }

    // balance residuals over consecutive uniform snapshot triples
    for (std::size_t k = 1; k + 1 < out.snapshots.size(); ++k) {
        const double dsl = out.snapshots[k].t - out.snapshots[k - 1].t;
        const double dsr = out.snapshots[k + 1].t - out.snapshots[k].t;
        if (std::abs(dsl - dsr) > 1e-9 * std::max(1.0, dsl)) continue;
        std::vector<SimState> window{out.snapshots[k - 1], out.snapshots[k],
                                     out.snapshots[k + 1]};
        out.diag.balance_times.push_back(out.snapshots[k].t);
        out.diag.balance_residual.push_back(
            energy_balance_residual(window, cfg.mu, dyn.ops()));
    }
    return out;
}

}  // namespace lake
