#ifndef WSD_ERRORS_HPP
#define WSD_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace wsd {

// Base class for everything this library throws on purpose.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bad or inconsistent configuration (unknown key, invalid value, missing
// required input path).
class ConfigError : public Error {
public:
    using Error::Error;
};

// Filesystem trouble: open/read/write failures.
class IoError : public Error {
public:
    using Error::Error;
};

// A file exists and is readable but is not what it claims to be
// (bad magic, unsupported version, truncation).
class FormatError : public IoError {
public:
    using IoError::IoError;
};

// Declared dimensions disagree with the payload.
class ShapeError : public FormatError {
public:
    using FormatError::FormatError;
};

// Input violates a mathematical precondition (empty vocabulary, zero vector,
// unknown target word, label/point count mismatch).
class DomainError : public Error {
public:
    using Error::Error;
};

} // namespace wsd

#endif
