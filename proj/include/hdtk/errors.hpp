#pragma once

#include <stdexcept>
#include <string>

namespace hdtk {

// Base of every error the library throws. Callers that only need a message can
// catch this; the CLI maps the two families below onto its exit codes.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bad input: unknown family, malformed window, mismatched domains, ...
class ConfigError : public Error {
public:
    using Error::Error;
};

// A numerical routine did not reach its tolerance.
class NumericalError : public Error {
public:
    using Error::Error;
};

class InvalidFamily : public ConfigError {
public:
    using ConfigError::ConfigError;
};

class InvalidWindow : public ConfigError {
public:
    using ConfigError::ConfigError;
};

class SizeLimitExceeded : public ConfigError {
public:
    using ConfigError::ConfigError;
};

class MissingEdge : public ConfigError {
public:
    using ConfigError::ConfigError;
};

class IncompatibleDomain : public ConfigError {
public:
    using ConfigError::ConfigError;
};

class IncompatibleRhs : public ConfigError {
public:
    using ConfigError::ConfigError;
};

class InsufficientWindow : public ConfigError {
public:
    using ConfigError::ConfigError;
};

// Distance search ran past its cutoff.
class DistanceCutoffExceeded : public ConfigError {
public:
    using ConfigError::ConfigError;
};

class SolverFailure : public NumericalError {
public:
    using NumericalError::NumericalError;
};

} // namespace hdtk
