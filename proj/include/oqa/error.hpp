#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace oqa {

/// Base for every error raised by the library. `kind` is a stable,
/// machine-readable tag (e.g. "NotInvertible", "ParseError") that the CLI
/// forwards verbatim in its error objects.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& message)
      : std::runtime_error(message), kind_(std::move(kind)) {}

  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t position)
      : Error("ParseError", message + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace oqa
