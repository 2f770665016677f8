#pragma once

#include <stdexcept>
#include <string>

namespace orlicz {

// Base class for every error this library raises on purpose.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed input text. For expression text, carries the byte offset of the
// first bad token; structural inputs (vectors, CLI values) use offset 0.
struct ParseError : Error {
    std::size_t offset;
    ParseError(const std::string& msg, std::size_t off)
        : Error(msg + " (at offset " + std::to_string(off) + ")"), offset(off) {}
    explicit ParseError(const std::string& msg) : Error(msg), offset(0) {}
};

// Input outside the domain a function or routine was validated for.
struct DomainError : Error {
    using Error::Error;
};

// A computation left the range where its result is trustworthy.
struct OverflowError : Error {
    using Error::Error;
};

} // namespace orlicz
