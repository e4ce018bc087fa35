#pragma once

#include <stdexcept>
#include <string>

namespace curvelab {

/// Input outside the mathematical domain of an operation (bad radius,
/// curvature past a trigonometric pole, invalid bracket, ...).
class DomainError : public std::domain_error {
public:
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// Malformed configuration (missing key, bad value, invalid suite name).
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Numerical solver gave up (step underflow, divergent iteration).
class SolverError : public std::runtime_error {
public:
    explicit SolverError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace curvelab
