#pragma once

#include <stdexcept>
#include <string>

namespace fqzeta {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Malformed input: bad field parameters, mismatched contexts, invalid
/// permutations, unparsable flags.
class InvalidArgument : public Error {
public:
    explicit InvalidArgument(const std::string& msg) : Error(msg) {}
};

/// Two elements or polynomials from different field contexts were combined.
class ContextMismatch : public InvalidArgument {
public:
    explicit ContextMismatch(const std::string& msg) : InvalidArgument(msg) {}
};

/// A computation was refused because it exceeds a configured budget
/// (enumeration count, tensor cells, or expansion size).
class BudgetError : public Error {
public:
    BudgetError(const std::string& msg, long long failing_degree = -1)
        : Error(msg), degree(failing_degree) {}
    /// Degree d at which the enumeration budget failed, or -1 if the
    /// refusal was not tied to a specific degree.
    long long degree;
};

/// A proved identity failed to hold numerically. This always indicates an
/// implementation bug, so it is a hard error rather than a warning.
class TheoremViolation : public Error {
public:
    explicit TheoremViolation(const std::string& msg) : Error(msg) {}
};

} // namespace fqzeta
