#include "roomgen/error.hpp"

namespace roomgen {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::DegenerateObject: return "DegenerateObject";
    case ErrorKind::DoesNotFit: return "DoesNotFit";
    case ErrorKind::DegeneratePair: return "DegeneratePair";
    case ErrorKind::DegenerateFeature: return "DegenerateFeature";
    case ErrorKind::MissingInstance: return "MissingInstance";
    case ErrorKind::FormatError: return "FormatError";
    case ErrorKind::TooFewPoints: return "TooFewPoints";
    case ErrorKind::CorruptContainer: return "CorruptContainer";
    case ErrorKind::WrongFormat: return "WrongFormat";
    case ErrorKind::Io: return "Io";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

void fail(ErrorKind kind, const std::string& message) { throw Error(kind, message); }

}  // namespace roomgen
