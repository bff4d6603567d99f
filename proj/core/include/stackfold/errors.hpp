#pragma once

#include <stdexcept>
#include <string>

namespace stackfold {

/// Base class for every error raised by the library. The CLI maps the
/// concrete subclasses onto distinct exit codes.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input text: sequences, stack tables, QUBO files.
class ParseError : public Error {
public:
    using Error::Error;
};

/// A problem exceeds a configured size cap (qubits, exhaustive variables).
class CapacityError : public Error {
public:
    using Error::Error;
};

/// A bitstring selects quartets that pair one base with two partners.
class InfeasibleError : public Error {
public:
    using Error::Error;
};

/// Requested data is absent, e.g. a stack energy missing from a table.
class LookupError : public Error {
public:
    using Error::Error;
};

}  // namespace stackfold
