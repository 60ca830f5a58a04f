#pragma once
#include <vector>

#include "lake/config.hpp"
#include "lake/diagnostics.hpp"
#include "lake/dynamics.hpp"

namespace lake {

struct RunResult {
    std::vector<SimState> snapshots;
    DiagnosticsSeries diag;
};

// Integrates the configured scenario to t_end. Snapshots land at every
// multiple of snapshot_dt, at every requested extra time, and at 0 and t_end;
// the step is clipped so those times are hit exactly. Deterministic:
// identical configs produce bit-identical trajectories.
RunResult run(const SolverConfig& cfg, const std::vector<double>& extra_snapshot_times = {});

}  // namespace lake
