#include "hypvol/error.hpp"

namespace hypvol {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::MalformedTerm: return "MalformedTerm";
    case ErrorKind::EdgeCountMismatch: return "EdgeCountMismatch";
    case ErrorKind::Disconnected: return "Disconnected";
    case ErrorKind::NonPlanar: return "NonPlanar";
    case ErrorKind::NotParabolic: return "NotParabolic";
    case ErrorKind::RelationViolated: return "RelationViolated";
    case ErrorKind::BadMatrix: return "BadMatrix";
    case ErrorKind::UnknownGenerator: return "UnknownGenerator";
    case ErrorKind::InconsistentExtension: return "InconsistentExtension";
    case ErrorKind::OutOfLattice: return "OutOfLattice";
    case ErrorKind::InvalidDocument: return "InvalidDocument";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what),
      kind_(kind) {}

}  // namespace hypvol
