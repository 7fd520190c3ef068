#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace wtfb {

// Bad numeric input, malformed file, violated model invariant. CLI maps this
// to exit code 2.
struct validation_error : std::runtime_error {
    explicit validation_error(const std::string& msg) : std::runtime_error(msg) {}
};

// A simulation rate configuration that violates the coding-scheme rate region
// or the enumeration feasibility cap. CLI maps this to exit code 3.
struct rate_error : std::runtime_error {
    std::vector<std::string> violations;
    explicit rate_error(const std::string& msg, std::vector<std::string> v = {})
        : std::runtime_error(msg), violations(std::move(v)) {}
};

} // namespace wtfb
