#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace arithdyn {

// Base of everything this library throws.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A precondition on a mathematical operation was violated
// (valuation of zero, arity mismatch, singular matrix, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

// The point lies on the divisor / subscheme / other point, so the local
// height or distance is infinite.
class OnSupport : public DomainError {
public:
    using DomainError::DomainError;
};

// Malformed polynomial / point / morphism text. `position` is a 0-based
// byte offset into the string that was handed to the parser.
class ParseError : public Error {
public:
    ParseError(const std::string& message, std::size_t position)
        : Error(message + " at position " + std::to_string(position)),
          position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

// Runtime guards: all forms of a morphism vanish at a point, a size budget
// ran out, or a fiber is not finite. These are recoverable; callers usually
// keep whatever partial result they already have.
class RuntimeGuard : public Error {
public:
    using Error::Error;
};

class IndeterminatePoint : public RuntimeGuard {
public:
    using RuntimeGuard::RuntimeGuard;
};

class BudgetExceeded : public RuntimeGuard {
public:
    using RuntimeGuard::RuntimeGuard;
};

class NotIsolated : public RuntimeGuard {
public:
    using RuntimeGuard::RuntimeGuard;
};

} // namespace arithdyn
