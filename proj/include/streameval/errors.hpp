#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace streameval {

// Malformed record in an input stream. line is 1-based; 0 means "not line-addressable".
class ParseError : public std::runtime_error {
public:
    ParseError(std::string message, std::size_t line = 0)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message
                                      : message),
          line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

// Record older than the reader's reorder tolerance allows.
class OrderingError : public ParseError {
public:
    using ParseError::ParseError;
};

// Invalid run/scenario configuration; message names the offending key.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& message) : std::runtime_error(message) {}
};

// Filesystem trouble: missing inputs, unwritable outputs.
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& message) : std::runtime_error(message) {}
};

}  // namespace streameval
