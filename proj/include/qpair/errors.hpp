// Exception types shared by the qpair library

#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace qpair {

// A caller-supplied value violates a documented precondition or invariant.
// `field()` names the offending parameter when one is known.
class InvalidArgument : public std::invalid_argument {
public:
    InvalidArgument(std::string field, const std::string& what)
        : std::invalid_argument(field.empty() ? what : field + ": " + what)
        , field_(std::move(field)) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

// A density matrix tagged with one basis was handed to an operation that
// requires the other.
class BasisMismatch : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// Integrator failures, non-finite states, or an eigensolver that did not converge.
class NumericFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace qpair
