#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace loewy {

enum class ErrorKind {
  DivisionByZero,
  FieldMismatch,
  UnsupportedField,
  LevelMismatch,
  BadOrdinals,
  BadIndex,
  TooLarge,
  BadCardinal,
  InvalidHom,
  Parse,
  Type,
  Usage,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// The single exception type thrown by the library. The kind is stable and
/// machine-readable; the message is for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Parse failure with a byte offset into the source text.
class ParseError : public Error {
 public:
  ParseError(std::size_t position, const std::string& what)
      : Error(ErrorKind::Parse,
              "at position " + std::to_string(position) + ": " + what),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace loewy
