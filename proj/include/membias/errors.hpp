#pragma once

#include <stdexcept>
#include <string>

namespace membias {

// Inputs violate a documented precondition (t outside [0,T], label out of range, ...).
struct DomainError : std::domain_error {
    explicit DomainError(const std::string& msg) : std::domain_error(msg) {}
};

// Mismatched lengths / grids between containers that must agree.
struct ShapeError : std::invalid_argument {
    explicit ShapeError(const std::string& msg) : std::invalid_argument(msg) {}
};

// A computation produced a non-finite value (divergence, overflow).
struct NumericalError : std::runtime_error {
    explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

// Invalid experiment configuration; message lists every violated field.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Operation not defined for the given variant (e.g. closed-form memory of a tanh RNN).
struct UnsupportedError : std::logic_error {
    explicit UnsupportedError(const std::string& msg) : std::logic_error(msg) {}
};

}  // namespace membias
