#pragma once

#include <stdexcept>
#include <string>

namespace affapp {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A construction parameter is outside its valid range (non-prime p, n too small, ...).
class ParameterError : public Error {
public:
    using Error::Error;
};

/// Malformed textual input. Carries the 1-based line number when known.
class FormatError : public Error {
public:
    FormatError(const std::string& what, int line = 0)
        : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
    int line() const noexcept { return line_; }

private:
    int line_;
};

/// A parsed table is well formed but is not a group.
class GroupAxiomError : public Error {
public:
    using Error::Error;
};

/// The request exceeds a configured size limit.
class CapacityError : public Error {
public:
    using Error::Error;
};

/// An operation was called outside the parameter range it is defined for.
class ScopeError : public Error {
public:
    using Error::Error;
};

class ArgumentError : public Error {
public:
    using Error::Error;
};

}  // namespace affapp
