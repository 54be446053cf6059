#pragma once

#include <stdexcept>
#include <string>

namespace holowidths {

/// A caller violated a documented precondition (bad size, out-of-range parameter).
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Argument outside the mathematical domain of a function, e.g. |y| > 1 for a Legendre polynomial.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// An infinite sum that should define a finite quantity does not converge.
class DivergenceError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Shapes of operands do not agree.
class DimensionMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A computation would exceed its configured cost budget.
class BudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed serialized input.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {
inline void require(bool condition, const std::string& message) {
    if (!condition) throw PreconditionError(message);
}
}  // namespace detail

}  // namespace holowidths
