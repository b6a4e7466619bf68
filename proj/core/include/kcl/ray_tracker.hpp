#pragma once

#include <array>
#include <vector>

#include "kcl/constrained_transport.hpp"
#include "kcl/fv_scheme.hpp"
#include "kcl/grid.hpp"
#include "kcl/vec3.hpp"

namespace kcl {

/// Physical positions of the front at interior cell centres, xi1 fastest.
struct FrontMesh {
  int n1 = 0;
  int n2 = 0;
  std::vector<Vec3> x;
  double t = 0.0;

  FrontMesh() = default;
  FrontMesh(int n1_, int n2_) : n1(n1_), n2(n2_), x(static_cast<std::size_t>(n1_ * n2_)) {}

  Vec3& at(int i, int j) { return x[static_cast<std::size_t>(j * n1 + i)]; }
  const Vec3& at(int i, int j) const { return x[static_cast<std::size_t>(j * n1 + i)]; }
};

/// X^(1) = X^n + dt M^n N^n;  X^{n+1} = 1/2 X^n + 1/2 X^(1) + 1/2 dt M^(1) N^(1).
void advance_front(FrontMesh& mesh, const StageVelocities& stages, double dt);

struct DiagnosticsRecord {
  double t = 0.0;
  double m_max = 0.0;
  double m_min = 0.0;
  double v_max = 0.0;
  double v_min = 0.0;
  double height = 0.0;
  std::array<double, 3> div_max{};
  int kink_count = 0;
};

struct KinkReport {
  CellArray<unsigned char> cell_flags;  ///< 1 where any face of the cell is flagged
  std::vector<unsigned char> xi2_faces; ///< flags of xi2 faces along the mid-xi1 row
  int line_count = 0;
};

/// A face is flagged when the normals of its two cells differ by more than
/// `threshold_deg`; the line count is the number of flagged runs met walking
/// along xi2 at the mid-xi1 row (wrapping when xi2 is periodic).
KinkReport detect_kinks(const Field& field, ModelKind model, double threshold_deg,
                        const MachSolverOptions& newton = {});

/// `ct == nullptr` measures the constraint from cell values instead of edges.
DiagnosticsRecord diagnostics(const Field& field, const FrontMesh& mesh, const CtState* ct,
                              ModelKind model, double kink_threshold_deg,
                              const MachSolverOptions& newton = {});

struct SectionPoint {
  int i = 0;
  int j = 0;
  Vec3 x;
};

/// Nearest-row extraction of mesh points within half a cell of the plane
/// x[axis] = value, ordered along the lattice direction transverse to the
/// one in which x[axis] varies most. Throws EmptySection.
std::vector<SectionPoint> cross_section(const FrontMesh& mesh, int axis, double value);

/// Centre point of the mesh: mean of the (up to four) cells closest to the
/// lattice midpoint.
Vec3 centerline_point(const FrontMesh& mesh);

}  // namespace kcl
