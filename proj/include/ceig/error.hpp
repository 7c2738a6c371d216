#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ceig {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bad input: malformed data, wrong shapes, broken preconditions.
class ValidationError : public Error {
public:
    using Error::Error;
};

class SymmetryViolation : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class NonFinite : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class BadLength : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class DimensionMismatch : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class UnsupportedDimension : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class NegativeInput : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class ParseError : public ValidationError {
public:
    ParseError(std::size_t line, const std::string& reason, const std::string& source = {})
        : ValidationError((source.empty() ? std::string("line ") : source + ":") + std::to_string(line) + ": " +
                          reason),
          line_(line), reason_(reason)
    {
    }

    std::size_t line() const noexcept { return line_; }
    const std::string& reason() const noexcept { return reason_; }

private:
    std::size_t line_;
    std::string reason_;
};

class NoConvergence : public Error {
public:
    NoConvergence(const std::string& what, double best_residual)
        : Error(what), best_residual_(best_residual) {}

    double best_residual() const noexcept { return best_residual_; }

private:
    double best_residual_;
};

// A relation that holds in exact arithmetic was violated beyond its numerical slack.
class PropertyViolation : public Error {
public:
    using Error::Error;
};

class RadicandNegative : public PropertyViolation {
public:
    using PropertyViolation::PropertyViolation;
};

} // namespace ceig
