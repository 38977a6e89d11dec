#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace leftinv {

enum class ErrorKind {
  NonFinite,
  EmptyMatrix,
  SpecInvalid,
  Unstable,
  CrossCheckFailed,
  SymbolVanishes,
  NotLeftInvertible,
  PerturbationTooLarge,
  WindowTooSmall,
  NotNatural,
  IndexNotMinusOne,
  NotAnalytic,
  OutsideDisc,
  BadGrid,
  SyntaxError,
  EmptyInput,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NonFinite: return "NonFinite";
    case ErrorKind::EmptyMatrix: return "EmptyMatrix";
    case ErrorKind::SpecInvalid: return "SpecInvalid";
    case ErrorKind::Unstable: return "Unstable";
    case ErrorKind::CrossCheckFailed: return "CrossCheckFailed";
    case ErrorKind::SymbolVanishes: return "SymbolVanishes";
    case ErrorKind::NotLeftInvertible: return "NotLeftInvertible";
    case ErrorKind::PerturbationTooLarge: return "PerturbationTooLarge";
    case ErrorKind::WindowTooSmall: return "WindowTooSmall";
    case ErrorKind::NotNatural: return "NotNatural";
    case ErrorKind::IndexNotMinusOne: return "IndexNotMinusOne";
    case ErrorKind::NotAnalytic: return "NotAnalytic";
    case ErrorKind::OutsideDisc: return "OutsideDisc";
    case ErrorKind::BadGrid: return "BadGrid";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::EmptyInput: return "EmptyInput";
  }
  return "Unknown";
}

/// Every failure raised by the library carries a machine-readable kind.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Parse failure; `position` is the zero-based column of the offending character.
class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t position, const std::string& message)
      : Error(ErrorKind::SyntaxError, message + " at column " + std::to_string(position + 1)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace leftinv
