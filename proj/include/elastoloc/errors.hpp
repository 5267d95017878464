#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace elastoloc {

/// Bad argument to a public operation (wrong sizes, out-of-range counts).
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A query point lies outside the meshed body.
class OutOfDomain : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

/// Run configuration rejected before any work starts.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// CG did not reach the requested tolerance within its iteration cap.
class SolverFailure : public std::runtime_error {
public:
    SolverFailure(const std::string& what, double residual, std::size_t iterations)
        : std::runtime_error(what), residual_(residual), iterations_(iterations) {}

    double residual() const noexcept { return residual_; }
    std::size_t iterations() const noexcept { return iterations_; }

private:
    double residual_;
    std::size_t iterations_;
};

}  // namespace elastoloc
