#ifndef SAWKIT_ERRORS_HPP
#define SAWKIT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace sawkit {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad input: unknown family name, malformed vertex, walk that is not a SAW.
struct InputError : Error {
    using Error::Error;
};

struct InvalidVertexError : InputError {
    using InputError::InputError;
};

struct UnknownFamilyError : InputError {
    using InputError::InputError;
};

// Operation not defined for this (family, mode) combination.
struct UnsupportedFamilyError : InputError {
    using InputError::InputError;
};

// Counter would wrap, arena would exceed its budget, search budget exhausted.
struct OverflowError : Error {
    using Error::Error;
};

struct ResourceError : Error {
    using Error::Error;
};

// A verified construction (e.g. quasi-geodesic window) failed its own check.
struct ConstructionError : Error {
    using Error::Error;
};

// An exact identity that must hold (mass transport, reversal count) failed.
struct IdentityViolationError : Error {
    using Error::Error;
};

} // namespace sawkit

#endif
