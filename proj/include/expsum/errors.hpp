#pragma once

#include <stdexcept>
#include <string>

namespace expsum {

// Argument outside the mathematical domain of an operation (n = 0, p not prime, ...).
struct DomainError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A stated precondition does not hold (m does not divide n, m*alpha integral, ...).
struct PreconditionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Request exceeds a configured capacity (sieve limit, table size, subset enumeration).
struct ResourceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Structurally invalid configuration (shared CRT primes, eta matching psi, ...).
struct InvalidConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

} // namespace expsum
