#pragma once

#include <stdexcept>
#include <string>

namespace rotalign {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent configuration (unknown key, unit tag, preset).
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Shapes or grids that do not fit together.
class StructuralError : public Error {
public:
    using Error::Error;
};

/// Norm drift or failed convergence during propagation.
class NumericalError : public Error {
public:
    NumericalError(const std::string& what, double residual)
        : Error(what), residual_(residual) {}

    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

} // namespace rotalign
