#pragma once
#include <string>
#include <vector>

#include "lake/config.hpp"
#include "lake/elliptic.hpp"
#include "lake/runner.hpp"
#include "lake/vvl.hpp"

namespace lake {

// CSV and field-file emission for the CLI. Every file starts with a header
// line carrying the format version and the config hash; all writes are
// write-temp-rename and byte-stable across reruns.
void write_run_outputs(const std::string& dir, const SolverConfig& cfg,
                       const RunResult& result);
void write_sweep_report(const std::string& path, const SolverConfig& cfg,
                        const RateReport& rep);
void write_probe_report(const std::string& path, const SolverConfig& cfg,
                        const std::vector<ProbeRow>& rows);
void write_continuation_report(const std::string& path, const SolverConfig& cfg,
                               const std::vector<ContinuationRow>& rows);

}  // namespace lake
