#pragma once

#include <stdexcept>
#include <string>

namespace pns {

// Bad user-facing configuration (CLI exit code 2).
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Bad argument to a library operation.
struct ArgumentError : std::invalid_argument {
    explicit ArgumentError(const std::string& msg) : std::invalid_argument(msg) {}
};

// Solver produced a non-finite state or blew past the stability monitor
// (CLI exit code 4). Carries the simulation time of the offending step.
struct DivergedError : std::runtime_error {
    double time;
    DivergedError(const std::string& msg, double t)
        : std::runtime_error(msg + " at t=" + std::to_string(t)), time(t) {}
};

} // namespace pns
