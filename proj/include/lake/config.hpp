#pragma once
#include <cstdint>
#include <string>
#include <vector>

namespace lake {

// Initial vorticity library. "patch" is a mollified vortex patch (tanh edge),
// the bounded-vorticity case the rate study targets; "gaussian" is the smooth
// blob used by the conservation checks; "radial_bump" is the steady
// axisymmetric profile; "dipole" is a counter-rotating pair.
struct InitialData {
    std::string type = "gaussian";
    double amplitude = 1.0;
    double center_x = 0.3;
    double center_y = 0.0;
    double sigma = 0.12;      // gaussian / dipole width
    double radius = 0.25;     // patch radius
    double width = 0.02;      // patch edge width
    double separation = 0.5;  // dipole center separation
};

struct SchemeConfig {
    std::string scheme = "ssprk3";
    double cfl_advective = 0.35;
    double cfl_diffusive = 0.5;
    bool dealias = true;
    double dt_max = 0.05;
};

struct SolverConfig {
    int n_r = 64;
    int n_theta = 128;
    double a = 2.0;
    double epsilon = 1e-2;
    double mu = 0.0;
    double q = 4.0;  // diagnostic exponent, in (2, inf]
    InitialData initial;
    double t_end = 1.0;
    double snapshot_dt = 0.1;  // <= 0: snapshots at t = 0 and t = T only
    double dt_fixed = 0.0;     // > 0: fixed step instead of the CFL policy
    SchemeConfig scheme;
    double solver_tol = 1e-10;
    int solver_max_iter = 200;
    std::string output_dir = "out";
    std::uint64_t seed = 1;
};

// Every violated constraint, with the offending key and bound named.
std::vector<std::string> validate(const SolverConfig& cfg);

// Parses a key-value document with [section] headers. Throws ConfigError
// carrying the full violation list (parse problems and constraint
// violations together).
SolverConfig parse_config(const std::string& text);
SolverConfig parse_config_file(const std::string& path);

// Canonical serialization (stable key order, round-trip number formatting);
// the basis of the config hash stamped into every output file.
std::string serialize(const SolverConfig& cfg);
std::uint64_t config_hash(const SolverConfig& cfg);

}  // namespace lake
