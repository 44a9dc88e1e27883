#pragma once

#include <stdexcept>
#include <string>

namespace azd {

// Invalid input data (grid mismatch, asymmetric multisegment, bad signs...).
class DomainError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A property that must hold for every valid input was violated.
// Seeing one of these means a bug, never bad user input.
class InvariantError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

inline void require(bool cond, const std::string& what) {
    if (!cond) throw DomainError(what);
}

inline void ensure(bool cond, const std::string& what) {
    if (!cond) throw InvariantError(what);
}

}  // namespace azd
