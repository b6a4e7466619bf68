#pragma once

#include <filesystem>

#include "kcl/constrained_transport.hpp"
#include "kcl/fv_scheme.hpp"
#include "kcl/ray_tracker.hpp"

namespace kcl {

/// A snapshot directory holds header.txt (key = value), cells.csv and
/// nodes.csv. Rows are row-major with xi1 fastest; values are written with
/// 17 significant digits so a reload is bit-exact.
///
/// cells.csv: i,j,xi1,xi2,w1,...,w8,x1,x2,x3,M,calV
/// nodes.csv: I,J,A1,A2,A3
struct Snapshot {
  Field field;
  CtState ct;
  FrontMesh mesh;
  ModelKind model = ModelKind::Srt;
  long step = 0;
};

void write_snapshot(const std::filesystem::path& dir, const Field& field, const CtState& ct,
                    const FrontMesh& mesh, ModelKind model, long step,
                    const MachSolverOptions& newton = {});

Snapshot read_snapshot(const std::filesystem::path& dir);

}  // namespace kcl
