#pragma once

#include <stdexcept>
#include <string>

namespace freefib {

/// Library error categories; the CLI maps each to a stable one-line prefix.
enum class ErrorKind {
  DegenerateInput,
  WrongDomain,
  WrongShape,
  Legality,
  AdjustmentExponent,
  ResourceBound,
  Divergence,
  UnsupportedSequence,
  Io,
};

inline const char* error_slug(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DegenerateInput: return "degenerate-input";
    case ErrorKind::WrongDomain: return "wrong-domain";
    case ErrorKind::WrongShape: return "wrong-shape";
    case ErrorKind::Legality: return "legality";
    case ErrorKind::AdjustmentExponent: return "adjustment-exponent-too-small";
    case ErrorKind::ResourceBound: return "resource-bound";
    case ErrorKind::Divergence: return "divergence";
    case ErrorKind::UnsupportedSequence: return "unsupported-sequence";
    case ErrorKind::Io: return "io";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void raise(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

}  // namespace freefib
