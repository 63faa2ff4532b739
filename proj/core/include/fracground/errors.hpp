#pragma once

#include <stdexcept>
#include <string>

namespace fracground {

// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// A scalar argument is outside its admissible range.
class ParameterError : public Error {
public:
    using Error::Error;
};

// Field data violates an invariant (wrong size, non-finite values).
class InvalidFieldError : public Error {
public:
    using Error::Error;
};

// A closed-form constant disagrees with its independent numerical check.
class CalibrationError : public Error {
public:
    CalibrationError(const std::string& what, double expected, double measured)
        : Error(what), expected(expected), measured(measured) {}
    double expected;
    double measured;
};

// The requested quantity does not exist in this parameter regime
// (e.g. a one-dimensional profile has no interior maximum).
class RegimeError : public Error {
public:
    using Error::Error;
};

// An iterate cannot be rescaled onto the Pohozaev manifold.
class InfeasibleError : public Error {
public:
    using Error::Error;
};

// A discretization is too coarse for the requested operation.
class ResolutionError : public Error {
public:
    using Error::Error;
};

// A geometric construction does not fit inside the box.
class GeometryError : public Error {
public:
    using Error::Error;
};

// An extrapolation or limit process failed to settle.
class ConvergenceError : public Error {
public:
    using Error::Error;
};

// Function values overflowed the representable range.
class AmplitudeError : public Error {
public:
    using Error::Error;
};

}  // namespace fracground
