#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rumor {

// Precondition violations throw std::invalid_argument. Failures of numerical
// or stochastic procedures on otherwise valid input use the types below.

class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class IntegrationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class GenerationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class BracketError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Scenario file problem; `line()` is 1-based, 0 when not tied to a line.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::size_t line, const std::string& what)
        : std::runtime_error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
          line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

}  // namespace rumor
