#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace kcl {

enum class ErrorKind {
  DegenerateTangents,
  NonPositiveEnergy,
  SonicState,
  NoConvergence,
  ImaginarySpeed,
  SingularFrame,
  ZeroSpeed,
  PathInconsistency,
  EmptySection,
  BadParameter,
  BadConfig,
  NonFiniteState,
  Io,
};

std::string_view to_string(ErrorKind kind);

/// Every recoverable failure in the solver is reported through this type;
/// `kind()` lets callers branch without parsing the message.
class SolverError : public std::runtime_error {
 public:
  SolverError(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace kcl
