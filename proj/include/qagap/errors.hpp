#pragma once

#include <stdexcept>
#include <string>

namespace qagap {

struct InvalidModelError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct SymmetryViolationError : std::runtime_error {
    SymmetryViolationError(const std::string& what, double residual)
        : std::runtime_error(what + " (max residual " + std::to_string(residual) + ")"),
          max_residual(residual) {}
    double max_residual;
};

struct ConvergenceError : std::runtime_error {
    ConvergenceError(const std::string& what, double residual0, double residual1)
        : std::runtime_error(what), residuals{residual0, residual1} {}
    double residuals[2];
};

struct ResourceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace qagap
