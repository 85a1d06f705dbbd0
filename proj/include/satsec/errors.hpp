#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace satsec {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A series or iteration failed to reach the requested accuracy.
class NumericError : public std::runtime_error {
public:
    explicit NumericError(const std::string& what, std::size_t terms_used = 0)
        : std::runtime_error(what), terms_used_(terms_used) {}

    std::size_t terms_used() const noexcept { return terms_used_; }

private:
    std::size_t terms_used_;
};

/// Request for a parameter family the evaluator does not implement.
class UnsupportedError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace satsec
