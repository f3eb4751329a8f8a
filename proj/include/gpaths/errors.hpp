#pragma once

#include <stdexcept>
#include <string>

namespace gpaths {

/// Base of every error raised by the library. The message carries the
/// originating module as a "module: " prefix.
class Error : public std::runtime_error {
public:
    Error(const std::string& module, const std::string& what)
        : std::runtime_error(module + ": " + what), module_(module), detail_(what) {}

    const std::string& module() const noexcept { return module_; }
    /// Message without the module prefix.
    const std::string& detail() const noexcept { return detail_; }

private:
    std::string module_;
    std::string detail_;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Evaluation requested at a removable or integrable singularity that the
/// caller is expected to regularize.
class SingularPointError : public Error {
public:
    using Error::Error;
};

/// Invalid configuration (unknown key, violated invariant, incompatible grids).
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Adaptive quadrature stopped before meeting the requested tolerance.
class QuadratureError : public Error {
public:
    QuadratureError(const std::string& what, double achieved_error, double requested)
        : Error("quadrature", what), achieved_(achieved_error), requested_(requested) {}

    double achieved_error() const noexcept { return achieved_; }
    double requested_error() const noexcept { return requested_; }

private:
    double achieved_;
    double requested_;
};

/// gamma(t) did not settle onto a flat plateau inside the sampling window.
class NoPlateauError : public Error {
public:
    NoPlateauError(const std::string& what, double relative_spread)
        : Error("coefficients", what), spread_(relative_spread) {}

    double relative_spread() const noexcept { return spread_; }

private:
    double spread_;
};

/// The secular map produced a covariance matrix violating the uncertainty
/// relation.
class UnphysicalMapError : public Error {
public:
    UnphysicalMapError(const std::string& what, double time)
        : Error("dynamics", what), time_(time) {}

    double time() const noexcept { return time_; }

private:
    double time_;
};

/// lambda is still below 1/2 and rising when the trajectory ends.
class InconclusiveThresholdError : public Error {
public:
    InconclusiveThresholdError(const std::string& what, double t_end)
        : Error("dynamics", what), t_end_(t_end) {}

    double t_end() const noexcept { return t_end_; }

private:
    double t_end_;
};

}  // namespace gpaths
