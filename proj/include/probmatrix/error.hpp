#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace probmatrix {

/// Base for every error raised by the library. The CLI maps UsageError to
/// exit code 2 and everything else to exit code 1.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidInput : public Error {
public:
    using Error::Error;
};

/// AUC is undefined when a series holds a single class.
class UndefinedAuc : public Error {
public:
    using Error::Error;
};

/// Spiegelhalter denominator is zero (every p in {0, 0.5, 1}).
class DegenerateVariance : public Error {
public:
    using Error::Error;
};

class FitError : public Error {
public:
    using Error::Error;
};

class UsageError : public Error {
public:
    using Error::Error;
};

class InsufficientData : public Error {
public:
    using Error::Error;
};

/// Raised by the prediction-log reader; carries the 1-based line number
/// (the header is line 1).
class ParseError : public InvalidInput {
public:
    ParseError(std::size_t line, const std::string& what)
        : InvalidInput("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

}  // namespace probmatrix
