#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace movers {

/// Raised when a state violates rho > 0, p > 0 or is non-finite.
class InvalidStateError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Positivity loss inside a running simulation. Carries the offending cell
/// (j for 1D; i, j for 2D) and the simulation time at which it was detected.
class PositivityError : public InvalidStateError {
public:
    PositivityError(std::string what, std::ptrdiff_t i, std::optional<std::ptrdiff_t> j, double time,
                    double rho, double p)
        : InvalidStateError(std::move(what)), i_(i), j_(j), time_(time), rho_(rho), p_(p) {}

    std::ptrdiff_t i() const noexcept { return i_; }
    std::optional<std::ptrdiff_t> j() const noexcept { return j_; }
    double time() const noexcept { return time_; }
    double rho() const noexcept { return rho_; }
    double pressure() const noexcept { return p_; }

private:
    std::ptrdiff_t i_;
    std::optional<std::ptrdiff_t> j_;
    double time_;
    double rho_;
    double p_;
};

/// Bad configuration: unknown case, bad grid sizes, out-of-range parameters.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace movers
