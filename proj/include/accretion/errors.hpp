#pragma once

#include <stdexcept>
#include <string>

namespace accretion {

// Raised when an operation's mathematical precondition fails at runtime:
// division by zero, indeterminate extended-real arithmetic, querying an
// empty-set supremum, evaluating a function outside its domain, and so on.
struct DomainError : std::runtime_error {
    explicit DomainError(const std::string& msg) : std::runtime_error(msg) {}
};

// Raised by the text-format readers (scalars, sets, function expressions).
// `offset` is the byte position in the input where scanning stopped.
struct ParseError : std::runtime_error {
    std::size_t offset;
    explicit ParseError(const std::string& msg, std::size_t off = 0)
        : std::runtime_error(msg), offset(off) {}
};

} // namespace accretion
