#include "kcl/constrained_transport.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "kcl/error.hpp"

namespace kcl {

namespace {

Vec3 slot_triplet(const StateVector& f, int offset) { return {f[offset], f[offset + 1], f[offset + 2]}; }

}  // namespace

CtState init_potentials(const NodeArray<Vec3>& edge_gu, const NodeArray<Vec3>& edge_gv,
                        const GridSpec& grid, double path_tol) {
  const double h1 = grid.h1();
  const double h2 = grid.h2();
  CtState ct(grid);
  NodeArray<Vec3>& a = ct.potential;

  // xi1 along the bottom row, then up each column.
  a(0, 0) = Vec3{};
  for (int I = 0; I < grid.n1; ++I) a(I + 1, 0) = a(I, 0) + h1 * edge_gu(I, 0);
  for (int I = 0; I <= grid.n1; ++I) {
    for (int J = 0; J < grid.n2; ++J) a(I, J + 1) = a(I, J) + h2 * edge_gv(I, J);
  }

  // Other order: up the left column, then along each row.
  NodeArray<Vec3> b(grid);
  for (int J = 0; J < grid.n2; ++J) b(0, J + 1) = b(0, J) + h2 * edge_gv(0, J);
  for (int J = 0; J <= grid.n2; ++J) {
    for (int I = 0; I < grid.n1; ++I) b(I + 1, J) = b(I, J) + h1 * edge_gu(I, J);
  }

  double scale = 1.0;
  double worst = 0.0;
  for (std::size_t k = 0; k < a.raw().size(); ++k) {
    scale = std::max(scale, norm(a.raw()[k]));
    worst = std::max(worst, norm(a.raw()[k] - b.raw()[k]));
  }
  if (!(worst <= path_tol * scale)) {
    std::ostringstream msg;
    msg << "edge data is not a gradient field: path integrals differ by " << worst;
    throw SolverError(ErrorKind::PathInconsistency, msg.str());
  }
  collocate_edges(ct);
  return ct;
}

void collocate_edges(CtState& ct) {
  const GridSpec& g = ct.grid;
  const double h1 = g.h1();
  const double h2 = g.h2();
  for (int J = 0; J <= g.n2; ++J) {
    for (int i = 0; i < g.n1; ++i) ct.edge_gu(i, J) = (ct.potential(i + 1, J) - ct.potential(i, J)) / h1;
  }
  for (int j = 0; j < g.n2; ++j) {
    for (int I = 0; I <= g.n1; ++I) ct.edge_gv(I, j) = (ct.potential(I, j + 1) - ct.potential(I, j)) / h2;
  }
}

NodeArray<Vec3> potential_rates(const FaceFluxes& faces, const GridSpec& grid) {
  NodeArray<Vec3> rate(grid);
  for (int J = 0; J <= grid.n2; ++J) {
    for (int I = 0; I <= grid.n1; ++I) {
      const Vec3 sum = slot_triplet(faces.f1(I, J - 1), 0) + slot_triplet(faces.f1(I, J), 0) +
                       slot_triplet(faces.f2(I - 1, J), 3) + slot_triplet(faces.f2(I, J), 3);
      rate(I, J) = -0.25 * sum;
    }
  }
  return rate;
}

void update_potentials(CtState& ct, const NodeArray<Vec3>& base, const FaceFluxes& faces, double dt,
                       RkStage stage) {
  const NodeArray<Vec3> rate = potential_rates(faces, ct.grid);
  auto& a = ct.potential.raw();
  const auto& a0 = base.raw();
  const auto& r = rate.raw();
  if (stage == RkStage::First) {
    for (std::size_t k = 0; k < a.size(); ++k) a[k] = a0[k] + dt * r[k];
  } else {
    for (std::size_t k = 0; k < a.size(); ++k) a[k] = 0.5 * a0[k] + 0.5 * a[k] + (0.5 * dt) * r[k];
  }
  collocate_edges(ct);
}

void center_interp(const CtState& ct, Field& field) {
  const GridSpec& g = field.grid;
  for (int j = 0; j < g.n2; ++j) {
    for (int i = 0; i < g.n1; ++i) {
      ConservedState& w = field.w(i, j);
      w.set_gu(0.5 * (ct.edge_gu(i, j) + ct.edge_gu(i, j + 1)));
      w.set_gv(0.5 * (ct.edge_gv(i, j) + ct.edge_gv(i + 1, j)));
    }
  }
}

namespace {

template <typename EdgeU, typename EdgeV>
DivergenceField divergence_from(const GridSpec& g, EdgeU edge_u, EdgeV edge_v) {
  DivergenceField out;
  out.per_cell = CellArray<Vec3>(g);
  const double h1 = g.h1();
  const double h2 = g.h2();
  for (int j = 0; j < g.n2; ++j) {
    for (int i = 0; i < g.n1; ++i) {
      const Vec3 d = (edge_v(i + 1, j) - edge_v(i, j)) / h1 - (edge_u(i, j + 1) - edge_u(i, j)) / h2;
      out.per_cell(i, j) = d;
      for (int k = 0; k < 3; ++k) out.max_abs[k] = std::max(out.max_abs[k], std::abs(d[k]));
    }
  }
  return out;
}

}  // namespace

DivergenceField divergence_field(const CtState& ct) {
  return divergence_from(
      ct.grid, [&](int i, int J) { return ct.edge_gu(i, J); }, [&](int I, int j) { return ct.edge_gv(I, j); });
}

DivergenceField cell_divergence(const Field& field) {
  const auto& w = field.w;
  return divergence_from(
      field.grid, [&](int i, int J) { return 0.5 * (w(i, J - 1).gu() + w(i, J).gu()); },
      [&](int I, int j) { return 0.5 * (w(I - 1, j).gv() + w(I, j).gv()); });
}

}  // namespace kcl
