#pragma once

#include <stdexcept>
#include <string>

namespace k3lab {

// Input outside the mathematical domain of an operation (λ ∈ {0,1}, τ not in
// the upper half-plane, degenerate family, ...). The CLI maps it to exit 3.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// A polynomial was evaluated without a value for one of its variables.
class MissingAssignment : public std::invalid_argument {
public:
    explicit MissingAssignment(const std::string& var)
        : std::invalid_argument("no value assigned to variable '" + var + "'"), variable(var) {}
    std::string variable;
};

// Numeric reconstruction could not reach the requested rounding accuracy.
class PrecisionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace k3lab
