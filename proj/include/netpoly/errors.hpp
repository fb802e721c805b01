#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace netpoly {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed polynomial text or net document.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t position)
        : Error(what + " at position " + std::to_string(position)), position_(position) {}
    explicit ParseError(const std::string& what) : Error(what), position_(npos) {}

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    /// Byte offset of the offending token, or npos when not applicable.
    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

/// A net that violates a structural invariant (dangling reference, duplicate id, ...).
class StructureError : public Error {
public:
    using Error::Error;
};

/// An operation was called outside its domain (no idle event, bad labeling, size cap).
class PreconditionError : public Error {
public:
    using Error::Error;
};

}  // namespace netpoly
