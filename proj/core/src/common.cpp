#include <cmath>
#include <string>

#include "kcl/error.hpp"
#include "kcl/grid.hpp"

namespace kcl {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DegenerateTangents: return "DegenerateTangents";
    case ErrorKind::NonPositiveEnergy: return "NonPositiveEnergy";
    case ErrorKind::SonicState: return "SonicState";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::ImaginarySpeed: return "ImaginarySpeed";
    case ErrorKind::SingularFrame: return "SingularFrame";
    case ErrorKind::ZeroSpeed: return "ZeroSpeed";
    case ErrorKind::PathInconsistency: return "PathInconsistency";
    case ErrorKind::EmptySection: return "EmptySection";
    case ErrorKind::BadParameter: return "BadParameter";
    case ErrorKind::BadConfig: return "BadConfig";
    case ErrorKind::NonFiniteState: return "NonFiniteState";
    case ErrorKind::Io: return "Io";
  }
  return "Unknown";
}

std::string_view to_string(BoundaryKind kind) {
  return kind == BoundaryKind::Periodic ? "periodic" : "extrapolation";
}

BoundaryKind boundary_from_string(std::string_view text) {
  if (text == "periodic") return BoundaryKind::Periodic;
  if (text == "extrapolation") return BoundaryKind::Extrapolation;
  throw SolverError(ErrorKind::BadConfig, "unknown boundary kind '" + std::string(text) + "'");
}

void GridSpec::validate() const {
  if (n1 < 4 || n2 < 4) {
    throw SolverError(ErrorKind::BadParameter, "grid needs at least 4 cells per direction");
  }
  if (!(h1() > 0.0) || !(h2() > 0.0) || !std::isfinite(h1()) || !std::isfinite(h2())) {
    throw SolverError(ErrorKind::BadParameter, "grid extents must be increasing and finite");
  }
  if (ghost < 2) {
    throw SolverError(ErrorKind::BadParameter, "reconstruction needs at least two ghost layers");
  }
}

}  // namespace kcl
