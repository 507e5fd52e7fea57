#ifndef UGV_ERRORS_HPP_
#define UGV_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace ugv {

// Invalid configuration values (Nyquist, durations, ranges).
class ConfigError : public std::invalid_argument {
public:
    explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

// A call violated an operation precondition.
class ArgumentError : public std::invalid_argument {
public:
    explicit ArgumentError(const std::string& what) : std::invalid_argument(what) {}
};

// A relay bank closes both switches of one supply leg.
class ShootThroughError : public std::logic_error {
public:
    explicit ShootThroughError(const std::string& what) : std::logic_error(what) {}
};

class SessionError : public std::runtime_error {
public:
    explicit SessionError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed scenario, script or WAV input.
class InputError : public std::runtime_error {
public:
    explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

// Host environment failure, e.g. the listening port cannot be bound.
class EnvironmentError : public std::runtime_error {
public:
    explicit EnvironmentError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace ugv

#endif
