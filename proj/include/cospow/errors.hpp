#pragma once

#include <stdexcept>
#include <string>

namespace cospow {

// Bad argument values (negative gamma, zero denominators, out-of-range
// orders, ...). Maps to CLI exit code 2.
class DomainError : public std::invalid_argument {
public:
    explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

// A computation would exceed the configured precision or size caps.
// Maps to CLI exit code 3.
class ResourceLimitError : public std::runtime_error {
public:
    explicit ResourceLimitError(const std::string& what) : std::runtime_error(what) {}
};

// Degenerate fit input or not enough data points to infer structure.
// Maps to CLI exit code 4.
class FitError : public std::runtime_error {
public:
    explicit FitError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace cospow
