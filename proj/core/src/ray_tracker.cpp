#include "kcl/ray_tracker.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "kcl/error.hpp"

namespace kcl {

void advance_front(FrontMesh& mesh, const StageVelocities& stages, double dt) {
  const std::size_t n = mesh.x.size();
  if (stages.stage0.size() != n || stages.stage1.size() != n) {
    throw SolverError(ErrorKind::BadParameter, "stage velocities do not match the mesh");
  }
  for (std::size_t k = 0; k < n; ++k) {
    const Vec3 x0 = mesh.x[k];
    const Vec3 x1 = x0 + dt * stages.stage0[k];
    mesh.x[k] = 0.5 * x0 + 0.5 * x1 + (0.5 * dt) * stages.stage1[k];
  }
  mesh.t += dt;
}

namespace {

// Normals over interior cells plus one wrapped layer where the axis is periodic.
CellArray<Vec3> cell_normals(const Field& field, ModelKind model, const MachSolverOptions& newton) {
  const GridSpec& g = field.grid;
  CellArray<Vec3> n(g);
  for (int j = 0; j < g.n2; ++j) {
    for (int i = 0; i < g.n1; ++i) n(i, j) = recover_primitives(field.w(i, j), model, newton).N;
  }
  return n;
}

bool face_kinked(const Vec3& a, const Vec3& b, double threshold_rad) { return angle_between(a, b) > threshold_rad; }

int count_runs(const std::vector<unsigned char>& flags, bool periodic) {
  const int m = static_cast<int>(flags.size());
  if (m == 0) return 0;
  if (periodic && std::all_of(flags.begin(), flags.end(), [](unsigned char f) { return f != 0; })) return 1;
  int runs = 0;
  for (int k = 0; k < m; ++k) {
    if (!flags[static_cast<std::size_t>(k)]) continue;
    const bool prev = k > 0 ? flags[static_cast<std::size_t>(k - 1)] != 0
                            : (periodic && flags[static_cast<std::size_t>(m - 1)] != 0);
    if (!prev) ++runs;
  }
  return runs;
}

}  // namespace

KinkReport detect_kinks(const Field& field, ModelKind model, double threshold_deg, const MachSolverOptions& newton) {
  const GridSpec& g = field.grid;
  const double thr = threshold_deg * std::numbers::pi / 180.0;
  const CellArray<Vec3> n = cell_normals(field, model, newton);
  const bool per1 = g.bc_xi1 == BoundaryKind::Periodic;
  const bool per2 = g.bc_xi2 == BoundaryKind::Periodic;

  KinkReport rep;
  rep.cell_flags = CellArray<unsigned char>(g, 0);
  for (int j = 0; j < g.n2; ++j) {
    for (int i = 0; i < g.n1; ++i) {
      if (i + 1 < g.n1 || per1) {
        const int ip = (i + 1) % g.n1;
        if (face_kinked(n(i, j), n(ip, j), thr)) rep.cell_flags(i, j) = rep.cell_flags(ip, j) = 1;
      }
      if (j + 1 < g.n2 || per2) {
        const int jp = (j + 1) % g.n2;
        if (face_kinked(n(i, j), n(i, jp), thr)) rep.cell_flags(i, j) = rep.cell_flags(i, jp) = 1;
      }
    }
  }

  const int mid = g.n1 / 2;
  const int faces = per2 ? g.n2 : g.n2 - 1;
  rep.xi2_faces.assign(static_cast<std::size_t>(std::max(faces, 0)), 0);
  for (int j = 0; j < faces; ++j) {
    const int jp = (j + 1) % g.n2;
    rep.xi2_faces[static_cast<std::size_t>(j)] = face_kinked(n(mid, j), n(mid, jp), thr) ? 1 : 0;
  }
  rep.line_count = count_runs(rep.xi2_faces, per2);
  return rep;
}

DiagnosticsRecord diagnostics(const Field& field, const FrontMesh& mesh, const CtState* ct, ModelKind model,
                              double kink_threshold_deg, const MachSolverOptions& newton) {
  const GridSpec& g = field.grid;
  DiagnosticsRecord d;
  d.t = field.t;
  d.m_max = -std::numeric_limits<double>::infinity();
  d.m_min = std::numeric_limits<double>::infinity();
  d.v_max = model == ModelKind::Srt ? -std::numeric_limits<double>::infinity() : 0.0;
  d.v_min = model == ModelKind::Srt ? std::numeric_limits<double>::infinity() : 0.0;
  for (int j = 0; j < g.n2; ++j) {
    for (int i = 0; i < g.n1; ++i) {
      const PrimitiveState p = recover_primitives(field.w(i, j), model, newton);
      d.m_max = std::max(d.m_max, p.M);
      d.m_min = std::min(d.m_min, p.M);
      if (model == ModelKind::Srt) {
        d.v_max = std::max(d.v_max, p.calV);
        d.v_min = std::min(d.v_min, p.calV);
      }
    }
  }
  double zmax = -std::numeric_limits<double>::infinity();
  double zmin = std::numeric_limits<double>::infinity();
  for (const Vec3& x : mesh.x) {
    zmax = std::max(zmax, x.z);
    zmin = std::min(zmin, x.z);
  }
  d.height = mesh.x.empty() ? 0.0 : zmax - zmin;
  d.div_max = ct != nullptr ? divergence_field(*ct).max_abs : cell_divergence(field).max_abs;
  d.kink_count = detect_kinks(field, model, kink_threshold_deg, newton).line_count;
  return d;
}

std::vector<SectionPoint> cross_section(const FrontMesh& mesh, int axis, double value) {
  if (axis < 0 || axis > 2) throw SolverError(ErrorKind::BadParameter, "section axis must be 0, 1 or 2");
  if (mesh.n1 < 2 || mesh.n2 < 2) throw SolverError(ErrorKind::EmptySection, "mesh too small for a section");

  // Which lattice direction does x[axis] change along?
  double var1 = 0.0;
  double var2 = 0.0;
  for (int j = 0; j < mesh.n2; ++j) {
    for (int i = 0; i < mesh.n1; ++i) {
      if (i + 1 < mesh.n1) var1 += std::abs(mesh.at(i + 1, j)[axis] - mesh.at(i, j)[axis]);
      if (j + 1 < mesh.n2) var2 += std::abs(mesh.at(i, j + 1)[axis] - mesh.at(i, j)[axis]);
    }
  }
  var1 /= static_cast<double>((mesh.n1 - 1) * mesh.n2);
  var2 /= static_cast<double>(mesh.n1 * (mesh.n2 - 1));
  const bool along1 = var1 >= var2;
  const int nsearch = along1 ? mesh.n1 : mesh.n2;
  const int nline = along1 ? mesh.n2 : mesh.n1;
  auto pick = [&](int line, int s) -> const Vec3& { return along1 ? mesh.at(s, line) : mesh.at(line, s); };

  std::vector<SectionPoint> out;
  for (int line = 0; line < nline; ++line) {
    int best = -1;
    double best_dist = std::numeric_limits<double>::infinity();
    for (int s = 0; s < nsearch; ++s) {
      const double dist = std::abs(pick(line, s)[axis] - value);
      // Ties go to the lower index so symmetric fronts give a connected polyline.
      if (dist < best_dist - 1e-12 * (1.0 + std::abs(value))) {
        best = s;
        best_dist = dist;
      }
    }
    double step = 0.0;
    if (best > 0) step = std::max(step, std::abs(pick(line, best)[axis] - pick(line, best - 1)[axis]));
    if (best + 1 < nsearch) step = std::max(step, std::abs(pick(line, best + 1)[axis] - pick(line, best)[axis]));
    if (best_dist <= 0.5 * step + 1e-12) {
      SectionPoint p;
      p.i = along1 ? best : line;
      p.j = along1 ? line : best;
      p.x = pick(line, best);
      out.push_back(p);
    }
  }
  if (out.empty()) throw SolverError(ErrorKind::EmptySection, "plane does not cut the front");
  return out;
}

Vec3 centerline_point(const FrontMesh& mesh) {
  if (mesh.n1 < 1 || mesh.n2 < 1) throw SolverError(ErrorKind::EmptySection, "empty mesh");
  const int i_hi = mesh.n1 / 2;
  const int i_lo = mesh.n1 % 2 == 0 ? i_hi - 1 : i_hi;
  const int j_hi = mesh.n2 / 2;
  const int j_lo = mesh.n2 % 2 == 0 ? j_hi - 1 : j_hi;
  Vec3 sum;
  int count = 0;
  for (int j = j_lo; j <= j_hi; ++j) {
    for (int i = i_lo; i <= i_hi; ++i) {
      sum += mesh.at(i, j);
      ++count;
    }
  }
  return sum / static_cast<double>(count);
}

}  // namespace kcl
