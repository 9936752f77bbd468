#pragma once

#include <stdexcept>
#include <string>

namespace padicuhp {

// Malformed or inconsistent user input (files, CLI arguments, packages).
struct input_error : std::runtime_error {
    explicit input_error(const std::string& msg) : std::runtime_error(msg) {}
};

// A computation that cannot be carried out at the requested precision/depth,
// or whose preconditions fail at runtime (inversion of zero, singular matrix, ...).
struct compute_error : std::runtime_error {
    explicit compute_error(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace padicuhp
