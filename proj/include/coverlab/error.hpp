#pragma once

#include <stdexcept>
#include <string>

namespace coverlab {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Arithmetic left the representable 64-bit range (e.g. an LCM blowup).
struct OverflowError : Error {
    using Error::Error;
};

// A bitset or table would exceed the configured memory cap.
struct CapacityError : Error {
    using Error::Error;
};

struct ParseError : Error {
    ParseError(const std::string& what, std::size_t position)
        : Error(what + " (at position " + std::to_string(position) + ")"), position(position) {}
    std::size_t position;
};

// Caller violated a documented precondition.
struct PreconditionError : Error {
    using Error::Error;
};

// An advertised postcondition failed to verify; indicates a bug, never
// silently ignored.
struct PostconditionError : Error {
    using Error::Error;
};

} // namespace coverlab
