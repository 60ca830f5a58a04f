#pragma once
#include <stdexcept>
#include <string>
#include <vector>

namespace lake {

// Configuration rejected; carries every violation, not just the first.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(std::vector<std::string> violations)
        : std::runtime_error(join(violations)), violations_(std::move(violations)) {}
    const std::vector<std::string>& violations() const { return violations_; }

private:
    static std::string join(const std::vector<std::string>& v) {
        std::string s = "configuration invalid:";
        for (const auto& m : v) s += "\n  - " + m;
        return s;
    }
    std::vector<std::string> violations_;
};

// Numerical abort: solver failure, blow-up guard, non-finite field.
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace lake
