#pragma once

#include <stdexcept>
#include <string>

namespace gsforge {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
    virtual const char* kind() const noexcept { return "error"; }
};

/// Argument outside an operation's precondition (bad order, bad exponent, ...).
class InvalidArgument : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "invalid_argument"; }
};

/// Evaluation requested outside the region where a quantity is defined
/// (series radius, profile interval, sampler grid).
class DomainError : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "domain_error"; }
};

/// A numerical procedure failed to produce a valid result
/// (degenerate denominator, negative square-root argument, Newton breakdown).
class NumericalError : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "numerical_error"; }
};

}  // namespace gsforge
