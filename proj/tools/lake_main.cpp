// Command-line front end: run / sweep / verify / probe.
#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "lake/errors.hpp"
#include "lake/io.hpp"
#include "lake/reports.hpp"
#include "lake/rng.hpp"
#include "lake/runner.hpp"
#include "lake/verify.hpp"
#include "lake/vvl.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvariant = 1;
constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;

std::vector<double> parse_list(const std::string& csv) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos < csv.size()) {
        const auto comma = csv.find(',', pos);
        const std::string tok = csv.substr(pos, comma == std::string::npos
                                                    ? std::string::npos
                                                    : comma - pos);
        if (!tok.empty()) out.push_back(std::stod(tok));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return out;
}

// Smooth deterministic curl-data samples for the probe.
std::vector<lake::ScalarField> probe_samples(const lake::Grid& g, std::uint64_t seed,
                                             int count) {
    std::vector<lake::ScalarField> out;
    for (int s = 0; s < count; ++s) {
        lake::SplitMix64 rng(seed + 1000ull * (s + 1));
        double c[4][4], ph[4][4];
        for (int m = 0; m < 4; ++m)
            for (int k = 0; k < 4; ++k) {
                c[m][k] = rng.uniform(-1.0, 1.0);
                ph[m][k] = rng.uniform(0.0, 6.283185307179586);
            }
        lake::ScalarField f(g);
        for (int j = 0; j < g.levels(); ++j) {
            const double r = g.r_nodes[j];
            for (int i = 0; i < g.n_theta; ++i) {
                double acc = 0.0;
                for (int m = 0; m < 4; ++m)
                    for (int k = 0; k < 4; ++k)
                        acc += c[m][k] * std::pow(r, m) * std::pow(1 - r * r, k % 3) *
                               std::cos(m * g.theta_nodes[i] + ph[m][k]);
                f(j, i) = acc;
            }
        }
        out.push_back(std::move(f));
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"degenerate-lake flow simulator and verification harness"};
    app.require_subcommand(1);

    std::string config_path, out_dir, mu_csv, times_csv = "";

    auto* c_run = app.add_subcommand("run", "integrate one configured scenario");
    c_run->add_option("--config", config_path, "config file")->required();
    c_run->add_option("--out", out_dir, "output directory override");

    auto* c_sweep = app.add_subcommand("sweep", "viscosity sweep against the inviscid reference");
    c_sweep->add_option("--config", config_path, "config file")->required();
    c_sweep->add_option("--mu", mu_csv, "comma-separated decreasing viscosities")->required();
    c_sweep->add_option("--times", times_csv, "comparison times (default T/4,T/2,T)");
    c_sweep->add_option("--out", out_dir, "output directory override");

    auto* c_verify = app.add_subcommand("verify", "frozen-constant invariant battery");
    c_verify->add_option("--out", out_dir, "output directory (default verify_out)");

    auto* c_probe = app.add_subcommand("probe", "velocity-recovery boundedness ratios");
    c_probe->add_option("--config", config_path, "config file")->required();
    c_probe->add_option("--out", out_dir, "output directory override");

    CLI11_PARSE(app, argc, argv);

    try {
        if (c_verify->parsed()) {
            const std::string dir = out_dir.empty() ? "verify_out" : out_dir;
            const int failures = lake::run_verify(dir);
            if (failures > 0) {
                std::fprintf(stderr, "verify: %d check(s) failed (see %s)\n", failures,
                             dir.c_str());
                return kExitInvariant;
            }
            std::printf("verify: all checks passed\n");
            return kExitOk;
        }

        lake::SolverConfig cfg = lake::parse_config_file(config_path);
        if (!out_dir.empty()) cfg.output_dir = out_dir;

        if (c_run->parsed()) {
            lake::RunResult res = lake::run(cfg);
            lake::write_run_outputs(cfg.output_dir, cfg, res);
            std::printf("run: t=%s, %zu snapshots -> %s\n",
                        lake::format_double(res.snapshots.back().t).c_str(),
                        res.snapshots.size(), cfg.output_dir.c_str());
            return kExitOk;
        }

        if (c_sweep->parsed()) {
            lake::SweepPlan plan;
            plan.base = cfg;
            plan.mu_list = parse_list(mu_csv);
            plan.comparison_times =
                times_csv.empty()
                    ? std::vector<double>{cfg.t_end / 4, cfg.t_end / 2, cfg.t_end}
                    : parse_list(times_csv);
            lake::RateReport rep = lake::sweep(plan);
            lake::write_sweep_report(cfg.output_dir + "/sweep_report.csv", cfg, rep);
            std::printf("sweep: %zu viscosities, envelope %s -> %s\n", rep.mu_list.size(),
                        rep.envelope_ok ? "dominates" : "VIOLATED", cfg.output_dir.c_str());
            return kExitOk;
        }

        if (c_probe->parsed()) {
            auto grid = std::make_shared<const lake::Grid>(
                lake::build_grid(cfg.n_r, cfg.n_theta));
            auto bath = std::make_shared<const lake::Bathymetry>(
                lake::eval_bathymetry(grid, cfg.a, cfg.epsilon));
            lake::StreamOperator op(bath, cfg.solver_tol, cfg.solver_max_iter);
            const auto samples = probe_samples(*grid, cfg.seed, 5);
            const auto rows =
                lake::elliptic_estimate_probe(*bath, op, samples, {3.0, 4.0, 6.0});
            lake::write_probe_report(cfg.output_dir + "/probe_report.csv", cfg, rows);
            std::printf("probe: %zu rows -> %s\n", rows.size(), cfg.output_dir.c_str());
            return kExitOk;
        }
    } catch (const lake::ConfigError& e) {
        std::fprintf(stderr, "%s\n", e.what());
        return kExitConfig;
    } catch (const lake::NumericError& e) {
        std::fprintf(stderr, "numerical abort: %s\n", e.what());
        return kExitNumeric;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitNumeric;
    }
    return kExitOk;
}
