#pragma once

#include <stdexcept>
#include <string>

namespace hyperan {

/// Base class for every error the library raises.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Operands of mixed or unsupported algebra dimension.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// Point too close to the real axis: the local complex plane is undefined there.
class RealAxisError : public Error {
public:
    using Error::Error;
};

/// Division by zero, evaluation at a pole, and similar.
class SingularityError : public Error {
public:
    using Error::Error;
};

/// Plane-restricted function evaluated away from its plane.
class PlaneMembershipError : public Error {
public:
    using Error::Error;
};

/// Grid sampling produced no usable points.
class EmptyGridError : public Error {
public:
    using Error::Error;
};

/// Malformed textual input (function specs, tables, reports).
class ParseError : public Error {
public:
    using Error::Error;
};

/// Inconsistent job configuration, detected before any evaluation.
class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace hyperan
