#pragma once

#include <stdexcept>
#include <string>

namespace limid {

/// Base class for all errors raised by the library. `exit_code()` is the
/// process exit status the CLI maps the error to.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
    virtual int exit_code() const { return 2; }
};

/// Malformed input: bad documents, invariant violations, unusable arguments.
class InputError : public Error {
public:
    using Error::Error;
    int exit_code() const override { return 2; }
};

/// Structurally incompatible operands (e.g. a shared scope variable with
/// mismatched state counts).
class StructuralError : public InputError {
public:
    using InputError::InputError;
};

/// A configured resource cap was exceeded: enumeration caps, per-step set
/// cardinality caps, policy-count caps, cooperative deadlines.
class ResourceError : public Error {
public:
    using Error::Error;
    int exit_code() const override { return 3; }
};

/// Deadline expired between propagation steps.
class TimeoutError : public ResourceError {
public:
    using ResourceError::ResourceError;
};

/// Non-finite values showed up in intermediate tables.
class NumericError : public Error {
public:
    using Error::Error;
    int exit_code() const override { return 4; }
};

} // namespace limid
