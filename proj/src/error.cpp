#include "loewy/error.hpp"

namespace loewy {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::FieldMismatch: return "FieldMismatch";
    case ErrorKind::UnsupportedField: return "UnsupportedField";
    case ErrorKind::LevelMismatch: return "LevelMismatch";
    case ErrorKind::BadOrdinals: return "BadOrdinals";
    case ErrorKind::BadIndex: return "BadIndex";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::BadCardinal: return "BadCardinal";
    case ErrorKind::InvalidHom: return "InvalidHom";
    case ErrorKind::Parse: return "ParseError";
    case ErrorKind::Type: return "TypeError";
    case ErrorKind::Usage: return "UsageError";
  }
  return "Error";
}

}  // namespace loewy
