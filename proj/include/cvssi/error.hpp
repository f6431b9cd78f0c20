#pragma once

#include <stdexcept>

namespace cvssi {

// Base type for all errors thrown by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Input data fails a precondition (non-finite samples, undersized image).
class InvalidInputError : public Error {
public:
    using Error::Error;
};

// A tuning value is outside its allowed domain.
class ConfigError : public Error {
public:
    using Error::Error;
};

// Operands have mismatched or empty dimensions.
class ShapeError : public Error {
public:
    using Error::Error;
};

// A file could not be opened, read, or written.
class IoError : public Error {
public:
    using Error::Error;
};

// Text input failed to parse; the message names the offending row.
class ParseError : public Error {
public:
    using Error::Error;
};

// Correlation is undefined for the given data (zero-variance input).
class UndefinedCorrelationError : public Error {
public:
    using Error::Error;
};

} // namespace cvssi
