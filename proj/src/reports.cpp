#include "lake/reports.hpp"

#include <cstdio>
#include <sstream>

#include "lake/io.hpp"

namespace lake {

namespace {

std::string csv_header(const char* kind, const SolverConfig& cfg) {
    std::ostringstream o;
    o << "# lake-csv v1 kind=" << kind << " config=" << hash_hex(config_hash(cfg)) << "\n";
    return o.str();
}

std::string snap_name(const char* stem, std::size_t idx) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%s_%06zu.field", stem, idx);
    return buf;
}

}  // namespace

void write_run_outputs(const std::string& dir, const SolverConfig& cfg,
                       const RunResult& result) {
    const std::uint64_t h = config_hash(cfg);
    const auto& d = result.diag;

    {
        std::ostringstream o;
        o << csv_header("diagnostics", cfg);
        o << "t,E,enstrophy_q2,enstrophy_qcfg,omega_max,dt\n";
        for (std::size_t k = 0; k < d.times.size(); ++k)
            o << format_double(d.times[k]) << "," << format_double(d.energy[k]) << ","
              << format_double(d.enstrophy_q2[k]) << ","
              << format_double(d.enstrophy_qcfg[k]) << ","
              << format_double(d.omega_max[k]) << "," << format_double(d.dt_used[k])
              << "\n";
        atomic_write(dir + "/diagnostics.csv", o.str());
    }
    {
        std::ostringstream o;
        o << csv_header("series", cfg);
        o << "t,E_beps,E_b,flux_div_residual\n";
        for (std::size_t k = 0; k < d.times.size(); ++k)
            o << format_double(d.times[k]) << "," << format_double(d.energy[k]) << ","
              << format_double(d.energy_true_b[k]) << ","
              << format_double(d.flux_div_residual[k]) << "\n";
        atomic_write(dir + "/series.csv", o.str());
    }
    {
        std::ostringstream o;
        o << csv_header("snapshots", cfg);
        o << "idx,t,grad_energy,yudovich_L,boundary_drag\n";
        for (std::size_t k = 0; k < d.snapshot_times.size(); ++k)
            o << k << "," << format_double(d.snapshot_times[k]) << ","
              << format_double(d.grad_energy[k]) << "," << format_double(d.yudovich[k])
              << "," << format_double(d.boundary_drag[k]) << "\n";
        atomic_write(dir + "/snapshots.csv", o.str());
    }
    {
        std::ostringstream o;
        o << csv_header("balance", cfg);
        o << "t,residual\n";
        for (std::size_t k = 0; k < d.balance_times.size(); ++k)
            o << format_double(d.balance_times[k]) << ","
              << format_double(d.balance_residual[k]) << "\n";
        atomic_write(dir + "/balance.csv", o.str());
    }
    for (std::size_t k = 0; k < result.snapshots.size(); ++k) {
        write_field(dir + "/" + snap_name("omega", k), result.snapshots[k].omega, h);
        write_field(dir + "/" + snap_name("psi", k), result.snapshots[k].psi, h);
        write_field(dir + "/" + snap_name("u", k), result.snapshots[k].u, h);
    }
}

void write_sweep_report(const std::string& path, const SolverConfig& cfg,
                        const RateReport& rep) {
    std::ostringstream o;
    o << csv_header("sweep", cfg);
    o << "# C_fit=" << format_double(rep.fit.C)
      << " M_observed=" << format_double(rep.M_observed)
      << " max_violation=" << format_double(rep.max_violation) << "\n";
    o << "t,mu,D,envelope,alpha_fit,M_fit,Ctilde_fit\n";
    for (std::size_t ti = 0; ti < rep.times.size(); ++ti)
        for (std::size_t mi = 0; mi < rep.mu_list.size(); ++mi)
            o << format_double(rep.times[ti]) << "," << format_double(rep.mu_list[mi])
              << "," << format_double(rep.D[ti][mi]) << ","
              << format_double(rep.envelope[ti][mi]) << ","
              << format_double(rep.alpha[ti]) << "," << format_double(rep.fit.M) << ","
              << format_double(rep.fit.Ctilde) << "\n";
    atomic_write(path, o.str());
}

void write_probe_report(const std::string& path, const SolverConfig& cfg,
                        const std::vector<ProbeRow>& rows) {
    std::ostringstream o;
    o << csv_header("probe", cfg);
    o << "p,sample_id,grid,epsilon,ratio_grad,ratio_sup\n";
    for (const auto& r : rows) {
        if (r.skipped) continue;
        o << format_double(r.p) << "," << r.sample_id << "," << r.n_r << ","
          << format_double(r.epsilon) << "," << format_double(r.ratio_grad) << ","
          << format_double(r.ratio_sup) << "\n";
    }
    atomic_write(path, o.str());
}

void write_continuation_report(const std::string& path, const SolverConfig& cfg,
                               const std::vector<ContinuationRow>& rows) {
    std::ostringstream o;
    o << csv_header("continuation", cfg);
    o << "eps_coarse,eps_fine,diff\n";
    for (const auto& r : rows)
        o << format_double(r.eps_coarse) << "," << format_double(r.eps_fine) << ","
          << format_double(r.diff) << "\n";
    atomic_write(path, o.str());
}

}  // namespace lake
