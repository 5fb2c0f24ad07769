#pragma once

#include <stdexcept>
#include <string>

namespace canard {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An input lies outside the domain an operation is defined on.
class DomainError : public Error {
public:
    using Error::Error;
};

/// A numerical procedure failed (non-finite values, no convergence).
class NumericError : public Error {
public:
    using Error::Error;
};

/// Malformed configuration or command line.
class UsageError : public Error {
public:
    using Error::Error;
};

}  // namespace canard
