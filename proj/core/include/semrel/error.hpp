#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace semrel {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Malformed input. Carries the 1-based line number when one applies (0 otherwise).
class ParseError : public Error {
  public:
    ParseError(std::size_t line, const std::string& what)
        : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line)
    {}

    [[nodiscard]] std::size_t line() const noexcept { return line_; }

  private:
    std::size_t line_;
};

/// A required input file or artifact is absent or unreadable.
class MissingInputError : public Error {
  public:
    using Error::Error;
};

/// Invalid parameter values or an unsupported combination of options.
class ConfigError : public Error {
  public:
    using Error::Error;
};

}  // namespace semrel
