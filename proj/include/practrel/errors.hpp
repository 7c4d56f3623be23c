#pragma once

#include <stdexcept>
#include <string>

namespace practrel {

// Root of every error thrown by the library. The CLI maps the subclasses onto
// exit codes: input problems exit 2, numerical problems exit 3.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A value violates a documented invariant (non-finite coefficient, k > n, ...).
class ValidationError : public Error {
public:
    using Error::Error;
};

// An evaluation point lies outside the parameter space.
class DomainError : public Error {
public:
    using Error::Error;
};

// An algorithm option is out of range (grid too small, tolerance <= 0).
class ParameterError : public Error {
public:
    using Error::Error;
};

// Both hypotheses carry zero posterior probability.
class DegenerateEvidenceError : public Error {
public:
    using Error::Error;
};

class NumericalError : public Error {
public:
    using Error::Error;
};

// Config document problem. `key` is the dotted path of the offending entry.
class ConfigError : public Error {
public:
    ConfigError(std::string key, const std::string& message)
        : Error(key.empty() ? message : key + ": " + message), key_(std::move(key)) {}

    const std::string& key() const noexcept { return key_; }

private:
    std::string key_;
};

}  // namespace practrel
