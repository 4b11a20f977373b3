#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace wcf {

// Error taxonomy. The CLI maps these onto its exit codes:
//   ArgumentError -> 2, ParseError/ValidationError/ConfigError/IoError -> 3,
//   WindowError -> 4.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A caller passed a value outside an operation's domain (non-finite
// temperature, S <= 1, zero-total fuel mix, ...).
class ArgumentError : public Error {
public:
    using Error::Error;
};

// Malformed input text. Carries the 1-based line number when known.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line)
        : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
    explicit ParseError(const std::string& what) : Error(what), line_(0) {}

    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

// Well-formed input that violates a data invariant (duplicate timestamps,
// relative humidity above 100, ...).
class ValidationError : public Error {
public:
    using Error::Error;
};

// Invalid configuration file content.
class ConfigError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

// Missing or unreadable file.
class IoError : public Error {
public:
    using Error::Error;
};

// Time-window problems: traces that do not overlap, gaps beyond the fill
// limit, job windows overrunning a series, sweeps with no feasible start.
class WindowError : public Error {
public:
    using Error::Error;
};

}  // namespace wcf
