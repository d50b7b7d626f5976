#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace roomgen {

enum class ErrorKind {
  InvalidInput,
  DegenerateObject,
  DoesNotFit,
  DegeneratePair,
  DegenerateFeature,
  MissingInstance,
  FormatError,
  TooFewPoints,
  CorruptContainer,
  WrongFormat,
  Io,
};

std::string_view to_string(ErrorKind kind);

// Every failure raised by the library carries a kind so callers (and tests)
// can branch on it without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& message);

}  // namespace roomgen
