#pragma once

#include <stdexcept>
#include <string>

namespace uaris {

// Argument outside the domain of a physical formula (f <= 0, r < 1 m, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Caller broke an interface contract: code/geometry size mismatch,
// combinatorial guard exceeded.
class ContractError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// Root search bracket does not contain a solution.
class OutOfBracketError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class CalibrationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed or invalid user input (files, flags).
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace uaris
