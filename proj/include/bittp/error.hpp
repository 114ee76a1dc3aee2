#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bittp {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed instance or document. `line()` is 1-based, 0 when not tied to a line.
class ParseError : public Error {
public:
    ParseError(const std::string& message, std::size_t line)
        : Error(line > 0 ? "line " + std::to_string(line) + ": " + message : message), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Precondition violated by a caller-supplied argument.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// Total picked weight exceeds the knapsack capacity.
class OverweightError : public Error {
public:
    using Error::Error;
};

/// Sample does not describe a permutation matrix.
class DecodeError : public Error {
public:
    using Error::Error;
};

/// A solution handed to a refinement step is outside its feasible domain.
class InfeasibleSolutionError : public Error {
public:
    using Error::Error;
};

} // namespace bittp
