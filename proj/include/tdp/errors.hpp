#ifndef TDP_ERRORS_HPP
#define TDP_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace tdp {

// Input-side failures (malformed or semantically invalid user input).
// The CLI maps these to exit code 1.
struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& msg) : std::runtime_error("parse error: " + msg) {}
};

struct ValidationError : std::runtime_error {
    explicit ValidationError(const std::string& msg) : std::runtime_error("validation error: " + msg) {}
};

struct CycleError : ValidationError {
    explicit CycleError(const std::string& msg) : ValidationError("combinational cycle: " + msg) {}
};

struct EndpointError : ValidationError {
    explicit EndpointError(const std::string& msg) : ValidationError(msg) {}
};

struct GenerationError : ValidationError {
    explicit GenerationError(const std::string& msg) : ValidationError(msg) {}
};

struct MismatchError : ValidationError {
    explicit MismatchError(const std::string& msg) : ValidationError(msg) {}
};

// Runtime-side failures (internal state or numerics). CLI exit code 2.
struct GraphError : std::runtime_error {
    explicit GraphError(const std::string& msg) : std::runtime_error("graph error: " + msg) {}
};

struct NonFiniteError : std::runtime_error {
    explicit NonFiniteError(const std::string& msg) : std::runtime_error("non-finite value: " + msg) {}
};

} // namespace tdp

#endif
