#pragma once

#include <stdexcept>
#include <string>

namespace loopforge {

/// Base of every error the library raises. The CLI maps these to exit code 2.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
public:
    using Error::Error;
};

/// Structure constants, form or star failed an algebraic check.
class ValidationError : public Error {
public:
    using Error::Error;
};

class ParameterError : public Error {
public:
    using Error::Error;
};

class AlgebraMismatch : public Error {
public:
    using Error::Error;
};

class IncompatibleGrid : public Error {
public:
    using Error::Error;
};

/// A truncated module cannot represent the requested computation exactly.
class TruncationError : public Error {
public:
    using Error::Error;
};

/// A configurable size cap (basis size, trace size) was exceeded.
class ResourceError : public Error {
public:
    using Error::Error;
};

class QuadratureError : public Error {
public:
    using Error::Error;
};

class SearchFailure : public Error {
public:
    using Error::Error;
};

class Unimplemented : public Error {
public:
    using Error::Error;
};

}  // namespace loopforge
