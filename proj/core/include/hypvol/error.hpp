#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hypvol {

enum class ErrorKind {
  MalformedTerm,
  EdgeCountMismatch,
  Disconnected,
  NonPlanar,
  NotParabolic,
  RelationViolated,
  BadMatrix,
  UnknownGenerator,
  InconsistentExtension,
  OutOfLattice,
  InvalidDocument,
};

std::string_view to_string(ErrorKind kind);

/// Error raised by every validating operation in the library. The kind is
/// stable and is what the command-line tool reports.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace hypvol
