#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace cartierlab {

enum class ErrorKind {
  invalid_argument,
  ring_mismatch,
  overflow,
  parse_error,
  unknown_variable,
  resource_cap,
  not_stabilized,
  unsupported,
  io_error,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Base exception for everything the library throws. `kind()` is the
/// machine-readable classification surfaced by the CLI as `error.kind`.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t position)
      : Error(ErrorKind::parse_error,
              message + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace cartierlab
