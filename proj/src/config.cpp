#include "lake/config.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "lake/errors.hpp"
#include "lake/io.hpp"

namespace lake {
namespace {

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

std::string unquote(const std::string& s) {
    if (s.size() >= 2 && ((s.front() == '"' && s.back() == '"') ||
                          (s.front() == '\'' && s.back() == '\'')))
        return s.substr(1, s.size() - 2);
    return s;
}

struct Doc {
    std::map<std::string, std::string> kv;  // "section.key" -> raw value
    std::vector<std::string> problems;

    bool has(const std::string& k) const { return kv.count(k) != 0; }

    void number(const std::string& k, double& out) {
        auto it = kv.find(k);
        if (it == kv.end()) return;
        const std::string v = unquote(trim(it->second));
        if (v == "inf" || v == "infinity") {
            out = std::numeric_limits<double>::infinity();
            kv.erase(it);
            return;
        }
        try {
            std::size_t pos = 0;
            const double d = std::stod(v, &pos);
            if (pos != v.size()) throw std::invalid_argument(v);
            out = d;
        } catch (const std::exception&) {
            problems.push_back(k + ": not a number: '" + v + "'");
        }
        kv.erase(k);
    }

    void integer(const std::string& k, int& out) {
        double d = out;
        const bool present = has(k);
        number(k, d);
        if (!present) return;
        if (d != std::floor(d))
            problems.push_back(k + ": must be an integer");
        else
            out = static_cast<int>(d);
    }

    void uinteger(const std::string& k, std::uint64_t& out) {
        auto it = kv.find(k);
        if (it == kv.end()) return;
        const std::string v = unquote(trim(it->second));
        std::uint64_t d = 0;
        auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), d);
        if (ec != std::errc() || p != v.data() + v.size())
            problems.push_back(k + ": not a non-negative integer: '" + v + "'");
        else
            out = d;
        kv.erase(k);
    }

    void text(const std::string& k, std::string& out) {
        auto it = kv.find(k);
        if (it == kv.end()) return;
        out = unquote(trim(it->second));
        kv.erase(k);
    }

    void boolean(const std::string& k, bool& out) {
        auto it = kv.find(k);
        if (it == kv.end()) return;
        const std::string v = unquote(trim(it->second));
        if (v == "true" || v == "1")
            out = true;
        else if (v == "false" || v == "0")
            out = false;
        else
            problems.push_back(k + ": not a boolean: '" + v + "'");
        kv.erase(k);
    }
};

Doc tokenize(const std::string& text, std::vector<std::string>& problems) {
    Doc doc;
    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') {
                problems.push_back("line " + std::to_string(lineno) +
                                   ": malformed section header");
                continue;
            }
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            problems.push_back("line " + std::to_string(lineno) + ": expected key = value");
            continue;
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key.empty()) {
            problems.push_back("line " + std::to_string(lineno) + ": empty key");
            continue;
        }
        const std::string full = section.empty() ? key : section + "." + key;
        if (doc.kv.count(full))
            problems.push_back("duplicate key: " + full);
        else
            doc.kv[full] = val;
    }
    return doc;
}

}  // namespace

std::vector<std::string> validate(const SolverConfig& c) {
    std::vector<std::string> v;
    if (c.n_r < 8) v.push_back("grid.n_r: must be >= 8");
    if (c.n_theta < 8) v.push_back("grid.n_theta: must be >= 8");
    if (c.n_theta % 2 != 0) v.push_back("grid.n_theta: must be even");
    if (c.a < 2.0) v.push_back("bathymetry.a: must be >= 2");
    if (c.epsilon < 0.0) v.push_back("bathymetry.epsilon: must be >= 0");
    if (c.mu < 0.0) v.push_back("physics.mu: must be >= 0");
    if (c.mu > 0.0 && !(c.epsilon > 0.0))
        v.push_back("bathymetry.epsilon: must be > 0 when physics.mu > 0");
    if (!(c.q > 2.0)) v.push_back("physics.q: must be in (2, inf]");
    if (!(c.t_end >= 0.0)) v.push_back("time.t_end: must be >= 0");
    if (!(c.dt_fixed >= 0.0)) v.push_back("time.dt_fixed: must be >= 0");
    if (!(c.scheme.dt_max > 0.0)) v.push_back("scheme.dt_max: must be > 0");
    if (!(c.scheme.cfl_advective > 0.0 && c.scheme.cfl_advective <= 1.0))
        v.push_back("scheme.cfl_advective: must be in (0, 1]");
    if (!(c.scheme.cfl_diffusive > 0.0 && c.scheme.cfl_diffusive <= 1.0))
        v.push_back("scheme.cfl_diffusive: must be in (0, 1]");
    if (c.scheme.scheme != "ssprk3")
        v.push_back("scheme.name: unknown scheme '" + c.scheme.scheme + "'");
    if (!(c.solver_tol > 0.0)) v.push_back("solver.tolerance: must be > 0");
    if (c.solver_max_iter < 1) v.push_back("solver.max_iterations: must be >= 1");
    const auto& t = c.initial.type;
    if (t != "radial_bump" && t != "gaussian" && t != "patch" && t != "dipole")
        v.push_back("initial.type: unknown type '" + t + "'");
    if (!std::isfinite(c.initial.amplitude)) v.push_back("initial.amplitude: must be finite");
    if (!(c.initial.sigma > 0.0)) v.push_back("initial.sigma: must be > 0");
    if (!(c.initial.radius > 0.0)) v.push_back("initial.radius: must be > 0");
    if (!(c.initial.width > 0.0)) v.push_back("initial.width: must be > 0");
    if (!(c.initial.separation > 0.0)) v.push_back("initial.separation: must be > 0");
    if (!(c.snapshot_dt == c.snapshot_dt)) v.push_back("time.snapshot_dt: must be a number");
    return v;
}

SolverConfig parse_config(const std::string& text) {
    std::vector<std::string> problems;
    Doc doc = tokenize(text, problems);

    SolverConfig c;
    doc.integer("grid.n_r", c.n_r);
    doc.integer("grid.n_theta", c.n_theta);
    doc.number("bathymetry.a", c.a);
    doc.number("bathymetry.epsilon", c.epsilon);
    doc.number("physics.mu", c.mu);
    doc.number("physics.q", c.q);
    doc.text("initial.type", c.initial.type);
    doc.number("initial.amplitude", c.initial.amplitude);
    doc.number("initial.center_x", c.initial.center_x);
    doc.number("initial.center_y", c.initial.center_y);
    doc.number("initial.sigma", c.initial.sigma);
    doc.number("initial.radius", c.initial.radius);
    doc.number("initial.width", c.initial.width);
    doc.number("initial.separation", c.initial.separation);
    doc.number("time.t_end", c.t_end);
    doc.number("time.snapshot_dt", c.snapshot_dt);
    doc.number("time.dt_fixed", c.dt_fixed);
    doc.text("scheme.name", c.scheme.scheme);
    doc.number("scheme.cfl_advective", c.scheme.cfl_advective);
    doc.number("scheme.cfl_diffusive", c.scheme.cfl_diffusive);
    doc.boolean("scheme.dealias", c.scheme.dealias);
    doc.number("scheme.dt_max", c.scheme.dt_max);
    doc.number("solver.tolerance", c.solver_tol);
    doc.integer("solver.max_iterations", c.solver_max_iter);
    doc.text("output.dir", c.output_dir);
    doc.uinteger("output.seed", c.seed);

    for (const auto& [k, _] : doc.kv) problems.push_back("unknown key: " + k);
    for (const auto& p : doc.problems) problems.push_back(p);
    for (const auto& p : validate(c)) problems.push_back(p);
    if (!problems.empty()) throw ConfigError(problems);
    return c;
}

SolverConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError({"cannot open config file: " + path});
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string serialize(const SolverConfig& c) {
    std::ostringstream o;
    auto num = [](double d) { return format_double(d); };
    o << "[grid]\n"
      << "n_r = " << c.n_r << "\nn_theta = " << c.n_theta << "\n"
      << "[bathymetry]\n"
      << "a = " << num(c.a) << "\nepsilon = " << num(c.epsilon) << "\n"
      << "[physics]\n"
      << "mu = " << num(c.mu) << "\nq = " << num(c.q) << "\n"
      << "[initial]\n"
      << "type = \"" << c.initial.type << "\"\n"
      << "amplitude = " << num(c.initial.amplitude) << "\n"
      << "center_x = " << num(c.initial.center_x) << "\n"
      << "center_y = " << num(c.initial.center_y) << "\n"
      << "sigma = " << num(c.initial.sigma) << "\n"
      << "radius = " << num(c.initial.radius) << "\n"
      << "width = " << num(c.initial.width) << "\n"
      << "separation = " << num(c.initial.separation) << "\n"
      << "[time]\n"
      << "t_end = " << num(c.t_end) << "\n"
      << "snapshot_dt = " << num(c.snapshot_dt) << "\n"
      << "dt_fixed = " << num(c.dt_fixed) << "\n"
      << "[scheme]\n"
      << "name = \"" << c.scheme.scheme << "\"\n"
      << "cfl_advective = " << num(c.scheme.cfl_advective) << "\n"
      << "cfl_diffusive = " << num(c.scheme.cfl_diffusive) << "\n"
      << "dealias = " << (c.scheme.dealias ? "true" : "false") << "\n"
      << "dt_max = " << num(c.scheme.dt_max) << "\n"
      << "[solver]\n"
      << "tolerance = " << num(c.solver_tol) << "\n"
      << "max_iterations = " << c.solver_max_iter << "\n"
      << "[output]\n"
      << "dir = \"" << c.output_dir << "\"\n"
      << "seed = " << c.seed << "\n";
    return o.str();
}

std::uint64_t config_hash(const SolverConfig& c) {
    SolverConfig canonical = c;
    canonical.output_dir.clear();  // where output lands must not change its bytes
    return fnv1a(serialize(canonical));
}

}  // namespace lake
