#pragma once

#include <stdexcept>

namespace genbath {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Binary operation on operators living on different Hilbert spaces.
class SpaceMismatch : public Error {
public:
    using Error::Error;
};

// Violated precondition on a user-supplied value.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

// Integrator step underflow, truncation leakage, monitor breach.
class NumericalFailure : public Error {
public:
    using Error::Error;
};

class Unsupported : public Error {
public:
    using Error::Error;
};

} // namespace genbath
