#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace sw {

// Base class for everything thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
public:
    using Error::Error;
};

// Requested quadrature accuracy is not attainable with the supplied sampling.
class ResolutionError : public Error {
public:
    using Error::Error;
};

// A boundary trace left the admissible range of the profile.  Carries the
// offending samples so callers can report where the trace went bad.
class RangeError : public Error {
public:
    struct Offender {
        std::size_t index;
        double t;
        double value;
    };

    RangeError(const std::string& msg, std::vector<Offender> offenders,
               bool near_stagnation = false)
        : Error(msg), offenders_(std::move(offenders)),
          near_stagnation_(near_stagnation) {}

    const std::vector<Offender>& offenders() const { return offenders_; }
    bool near_stagnation() const { return near_stagnation_; }

private:
    std::vector<Offender> offenders_;
    bool near_stagnation_;
};

// No uniform stream exists on the requested branch.
class NoStreamError : public Error {
public:
    using Error::Error;
};

// Newton iteration failed; keeps the last residual norm for diagnostics.
class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& msg, double last_residual, int iterations)
        : Error(msg), last_residual_(last_residual), iterations_(iterations) {}

    double last_residual() const { return last_residual_; }
    int iterations() const { return iterations_; }

private:
    double last_residual_;
    int iterations_;
};

// log h requested where h vanishes.
class SingularValueError : public Error {
public:
    using Error::Error;
};

// Config or file-format error; line is 1-based, 0 when not applicable.
class ParseError : public Error {
public:
    ParseError(const std::string& msg, int line = 0) : Error(msg), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

class IoError : public Error {
public:
    using Error::Error;
};

// Malformed input that is not a numeric-domain issue (size mismatch etc.).
class InvalidError : public Error {
public:
    using Error::Error;
};

}  // namespace sw
