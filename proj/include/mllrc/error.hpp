#pragma once

#include <stdexcept>
#include <string>

namespace mllrc {

/// Base of every error the library throws. The message always starts with a
/// category prefix ("precondition failed: ", "parse error: ", ...) so that
/// command-line callers can tell failures apart by message alone.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class PreconditionError : public Error {
public:
    explicit PreconditionError(const std::string& what)
        : Error("precondition failed: " + what) {}
};

class ParseError : public Error {
public:
    explicit ParseError(const std::string& what)
        : Error("parse error: " + what) {}
};

/// An exhaustive enumeration would exceed the configured budget. Never
/// replaced by an approximation.
class BudgetExceeded : public Error {
public:
    explicit BudgetExceeded(const std::string& what)
        : Error("budget exceeded: " + what) {}
};

class FieldMismatch : public Error {
public:
    explicit FieldMismatch(const std::string& what)
        : Error("field mismatch: " + what) {}
};

/// Certification asked for an exact k_opt value the oracle cannot supply.
class InexactOracle : public Error {
public:
    explicit InexactOracle(const std::string& what)
        : Error("inexact oracle: " + what) {}
};

}  // namespace mllrc
