#pragma once

#include <stdexcept>
#include <string>

namespace bqtsim {

// Base of every error raised by the simulator and protocol layers.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bitstring or amplitude count does not match the register.
class DimensionError : public Error {
public:
    using Error::Error;
};

// Unknown, duplicated or clashing qubit labels.
class LabelError : public Error {
public:
    using Error::Error;
};

// Input that violates a numeric precondition (norm, unitarity, ranges).
class ValidationError : public Error {
public:
    using Error::Error;
};

// Requested single-qubit factor is entangled with the rest of the register.
class NotProductError : public Error {
public:
    using Error::Error;
};

// Operation not allowed in the current session state.
class StateError : public Error {
public:
    using Error::Error;
};

// Not enough EPR pairs left to carry the requested messages.
class CapacityError : public Error {
public:
    using Error::Error;
};

}  // namespace bqtsim
