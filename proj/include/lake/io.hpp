#pragma once
#include <cstdint>
#include <string>
#include <string_view>

#include "lake/field.hpp"

namespace lake {

std::uint64_t fnv1a(std::string_view s);
std::string hash_hex(std::uint64_t h);

// Round-trip exact decimal text for doubles; identical bytes on reruns.
std::string format_double(double d);

// Write-temp-rename; partial files never land under the final name.
void atomic_write(const std::string& path, const std::string& content);

// Field snapshot format:
//   lake-field v1 <n_r> <n_theta> <components>
//   # config <hex-hash>
// followed by (n_r+1)*n_theta lines, level-major, one node per line
// (components space-separated).
void write_field(const std::string& path, const ScalarField& f, std::uint64_t cfg_hash);
void write_field(const std::string& path, const VectorField& f, std::uint64_t cfg_hash);
ScalarField read_scalar_field(const std::string& path, const Grid& g);

}  // namespace lake
