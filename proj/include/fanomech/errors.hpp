// errors.hpp — exception taxonomy shared by the library and the CLI.
#pragma once

#include <stdexcept>
#include <string>

namespace fanomech {

// Bad configuration or user input. CLI exit code 1.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Physics-level failure: divergence, instability, degenerate parameters. CLI exit code 2.
struct PhysicsError : std::runtime_error {
    explicit PhysicsError(const std::string& what) : std::runtime_error(what) {}
};

// Filesystem failure. CLI exit code 3.
struct IoError : std::runtime_error {
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace fanomech
