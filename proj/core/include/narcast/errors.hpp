#pragma once

#include <stdexcept>
#include <string>

namespace narcast {

/// Base class for all narcast errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed or inconsistent input data (CSV contents, argument domain violations).
class InputError : public Error {
public:
    explicit InputError(const std::string& what) : Error(what) {}
};

/// Training could not proceed or produced a non-finite state.
class TrainingError : public Error {
public:
    explicit TrainingError(const std::string& what) : Error(what) {}
};

/// Filesystem and serialization failures.
class IoError : public Error {
public:
    explicit IoError(const std::string& what) : Error(what) {}
};

} // namespace narcast
