#pragma once

#include <stdexcept>
#include <string>

namespace qgeom {

// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed textual input (ket labels, vectors, JSON targets).
class FormatError : public Error {
public:
    using Error::Error;
};

// Qubit-count mismatch or an index outside the register.
class DimensionError : public Error {
public:
    using Error::Error;
};

// Zero state where a nonzero one is required.
class DegenerateStateError : public Error {
public:
    using Error::Error;
};

// A documented precondition was violated by the caller.
class ContractError : public Error {
public:
    using Error::Error;
};

// Request exceeds a fixed size limit (register width, determinant order).
class CapacityError : public Error {
public:
    using Error::Error;
};

// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
public:
    using Error::Error;
};

// Non-injective or overflowing variable-to-qubit mapping.
class MappingError : public Error {
public:
    using Error::Error;
};

// An internal self-check failed.
class InternalError : public Error {
public:
    using Error::Error;
};

}  // namespace qgeom
