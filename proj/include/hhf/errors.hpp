#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hhf {

/// Malformed expression text. Carries the byte offset of the offending token.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t offset)
        : std::runtime_error(what + " at offset " + std::to_string(offset)), offset_(offset) {}

    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

/// Evaluation left the natural domain of an expression (ln of a non-positive
/// number, division by zero, non-finite intermediate).
class DomainError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A caller-supplied parameter violates a documented precondition.
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Quadrature did not reach its tolerance within the evaluation budget.
class NumericalFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A theorem hypothesis (convexity, symmetry, positivity) failed certification.
class HypothesisRejected : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace hhf
