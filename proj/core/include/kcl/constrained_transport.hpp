#pragma once

#include <array>

#include "kcl/fv_scheme.hpp"
#include "kcl/grid.hpp"
#include "kcl/vec3.hpp"

namespace kcl {

/// Staggered potentials A_k at nodes (i+1/2, j+1/2) together with the edge
/// values they induce:
///   edge_gu(i, J): G1 U on the xi1-directed edge from node (i, J) to (i+1, J),
///                  i in [0, n1), J in [0, n2]   (half-integer offset in xi2)
///   edge_gv(I, j): G2 V on the xi2-directed edge from node (I, j) to (I, j+1),
///                  I in [0, n1], j in [0, n2)
/// Both are stored in NodeArrays; the unused last column/row stays zero.
struct CtState {
  GridSpec grid;
  NodeArray<Vec3> potential;
  NodeArray<Vec3> edge_gu;
  NodeArray<Vec3> edge_gv;

  CtState() = default;
  explicit CtState(const GridSpec& g) : grid(g), potential(g), edge_gu(g), edge_gv(g) {}
};

enum class RkStage { First, Second };

/// Path-integrates edge values into potentials with A(0, 0) = 0. The result
/// is checked against the other integration order; a mismatch above
/// `path_tol` throws PathInconsistency.
CtState init_potentials(const NodeArray<Vec3>& edge_gu, const NodeArray<Vec3>& edge_gv,
                        const GridSpec& grid, double path_tol = 1e-8);

/// Redefines edge_gu / edge_gv from the potentials by central differences.
void collocate_edges(CtState& ct);

/// dA/dt at every node from the KCL slots of the numerical fluxes.
NodeArray<Vec3> potential_rates(const FaceFluxes& faces, const GridSpec& grid);

/// Advances the potentials with the same TVD-RK2 combination as the field:
///   First:  A <- A_n + dt R
///   Second: A <- 1/2 A_n + 1/2 A + 1/2 dt R
/// `base` holds A_n and is only read in the second stage. Edges are
/// re-collocated afterwards.
void update_potentials(CtState& ct, const NodeArray<Vec3>& base, const FaceFluxes& faces,
                       double dt, RkStage stage);

/// Overwrites slots 1-6 of interior cells with edge averages.
void center_interp(const CtState& ct, Field& field);

struct DivergenceField {
  CellArray<Vec3> per_cell;  ///< component k holds div B_k at each interior cell
  std::array<double, 3> max_abs{};
};

/// Discrete divergence (G2 V_k)_xi1 - (G1 U_k)_xi2 at cell centres from the
/// collocated edge values.
DivergenceField divergence_field(const CtState& ct);

/// Same operator with edge values taken as the mean of the two adjacent cell
/// values. Used to measure the constraint when CT is switched off.
DivergenceField cell_divergence(const Field& field);

}  // namespace kcl
