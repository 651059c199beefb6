#pragma once

#include <stdexcept>
#include <string>

namespace robusteq {

/// Base class for all errors raised by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed input text (JSON syntax, bad rational literals, ...).
struct FormatError : Error {
    using Error::Error;
};

/// Structurally inconsistent data (lasso not matching the transition
/// function, mismatched player lists, incomplete labelings, ...).
struct StructureError : Error {
    using Error::Error;
};

/// An explicit enumeration was refused because the instance is too large.
struct SizeError : Error {
    using Error::Error;
};

/// An enumeration exceeded the configured budget. Carries the offending
/// count (saturated) so callers can report it.
struct BudgetError : Error {
    unsigned long long count;

    BudgetError(const std::string& what, unsigned long long count)
        : Error(what), count(count) {}
};

}  // namespace robusteq
