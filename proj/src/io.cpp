#include "lake/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "lake/errors.hpp"

namespace lake {

std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

std::string hash_hex(std::uint64_t h) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string format_double(double d) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", d);
    return buf;
}

void atomic_write(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    if (target.has_parent_path()) fs::create_directories(target.parent_path());
    const fs::path tmp = target.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw NumericError("cannot open for writing: " + tmp.string());
        out << content;
        if (!out) throw NumericError("write failed: " + tmp.string());
    }
    fs::rename(tmp, target);
}

namespace {

std::string field_header(const Grid& g, int components, std::uint64_t cfg_hash) {
    std::ostringstream o;
    o << "lake-field v1 " << g.n_r << " " << g.n_theta << " " << components << "\n";
    o << "# config " << hash_hex(cfg_hash) << "\n";
    return o.str();
}

}  // namespace

void write_field(const std::string& path, const ScalarField& f, std::uint64_t cfg_hash) {
    std::ostringstream o;
    o << field_header(*f.grid, 1, cfg_hash);
    for (double v : f.v) o << format_double(v) << "\n";
    atomic_write(path, o.str());
}

void write_field(const std::string& path, const VectorField& f, std::uint64_t cfg_hash) {
    std::ostringstream o;
    o << field_header(*f.grid, 2, cfg_hash);
    for (std::size_t k = 0; k < f.size(); ++k)
        o << format_double(f.x[k]) << " " << format_double(f.y[k]) << "\n";
    atomic_write(path, o.str());
}

ScalarField read_scalar_field(const std::string& path, const Grid& g) {
    std::ifstream in(path);
    if (!in) throw NumericError("cannot open field file: " + path);
    std::string tag, version;
    int n_r = 0, n_theta = 0, components = 0;
    in >> tag >> version >> n_r >> n_theta >> components;
    if (tag != "lake-field" || version != "v1")
        throw NumericError("not a lake-field v1 file: " + path);
    if (n_r != g.n_r || n_theta != g.n_theta || components != 1)
        throw NumericError("field file shape mismatch: " + path);
    std::string line;
    std::getline(in, line);  // rest of header line
    ScalarField f(g);
    std::size_t k = 0;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (k >= f.v.size()) throw NumericError("field file has too many values: " + path);
        f.v[k++] = std::stod(line);
    }
    if (k != f.v.size()) throw NumericError("field file truncated: " + path);
    return f;
}

}  // namespace lake
