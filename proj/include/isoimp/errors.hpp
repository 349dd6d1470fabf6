#pragma once

#include <stdexcept>
#include <string>

namespace isoimp {

/// Bad or inconsistent user input (config files, CLI arguments). CLI exit code 1.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

/// A requested solution does not exist under the given time budget. CLI exit code 2.
struct InfeasibleError : std::runtime_error {
    explicit InfeasibleError(const std::string& msg) : std::runtime_error(msg) {}
};

/// An iterative solver ran out of its iteration budget. CLI exit code 3.
struct ConvergenceError : std::runtime_error {
    explicit ConvergenceError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Degenerate geometry (undefined transfer plane, singular endpoint system).
struct GeometryError : std::runtime_error {
    explicit GeometryError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Encountered a non-elliptic orbit where a bound one is required.
struct UnboundOrbitError : std::runtime_error {
    explicit UnboundOrbitError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace isoimp
