#pragma once

#include <stdexcept>
#include <string>

namespace expspline {

// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Invalid argument or precondition violation.
class DomainError : public Error {
public:
    using Error::Error;
};

// Result not representable in double precision.
class RangeError : public Error {
public:
    using Error::Error;
};

class QuadratureError : public Error {
public:
    using Error::Error;
};

// Linear system singular or too ill-conditioned to trust.
class SingularSystemError : public Error {
public:
    SingularSystemError(const std::string& what, double condition) : Error(what), condition_(condition) {}
    double condition() const noexcept { return condition_; }

private:
    double condition_;
};

// Gram system is not row diagonally dominant (c >= 1).
class DominanceError : public Error {
public:
    DominanceError(const std::string& what, int interval, double t_value)
        : Error(what), interval_(interval), t_value_(t_value) {}
    int interval() const noexcept { return interval_; }
    double t_value() const noexcept { return t_value_; }

private:
    int interval_;
    double t_value_;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace expspline
