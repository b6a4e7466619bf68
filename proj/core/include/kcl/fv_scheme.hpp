#pragma once

#include <vector>

#include "kcl/geometry_state.hpp"
#include "kcl/grid.hpp"
#include "kcl/vec3.hpp"

namespace kcl {

struct CtState;

enum class Limiter { Cweno, Minmod };

std::string_view to_string(Limiter limiter);
Limiter limiter_from_string(std::string_view text);

struct SchemeConfig {
  double cfl_nu = 0.45;
  Limiter limiter = Limiter::Cweno;
  double cweno_eps = 1e-6;
  double cweno_power = 2.0;
  MachSolverOptions newton;

  void validate() const;
};

struct Field {
  GridSpec grid;
  CellArray<ConservedState> w;
  double t = 0.0;

  Field() = default;
  explicit Field(const GridSpec& g) : grid(g), w(g) {}
};

void fill_ghosts(Field& field);

/// Limited slope (per unit length) from the three cell values around a cell.
double limited_slope(double w_minus, double w_centre, double w_plus, double h, const SchemeConfig& cfg);

/// Interface states of every cell along one axis: `minus` is the value at the
/// cell's lower face, `plus` at its upper face. Valid for cells with index in
/// [-1, n] along both axes (ghosts must be filled first).
struct Reconstruction {
  CellArray<ConservedState> minus;
  CellArray<ConservedState> plus;
};

Reconstruction reconstruct(const Field& field, Axis direction, ModelKind model, const SchemeConfig& cfg);

/// Kurganov-Tadmor flux between the state just left of a face (wl) and just
/// right of it (wr).
FluxVector kt_interface_flux(const ConservedState& wl, const ConservedState& wr, Axis direction,
                             ModelKind model, const MachSolverOptions& newton = {});

/// Numerical fluxes on every face touching a staggered node:
///   xi1 faces: I in [0, n1], rows j in [-1, n2]  (face I lies between cells I-1 and I)
///   xi2 faces: columns i in [-1, n1], J in [0, n2]
/// The out-of-range rows/columns are what the potential update needs at
/// boundary nodes.
struct FaceFluxes {
  int n1 = 0;
  int n2 = 0;
  std::vector<FluxVector> xi1;
  std::vector<FluxVector> xi2;

  FaceFluxes() = default;
  FaceFluxes(int n1_, int n2_);

  FluxVector& f1(int I, int j) { return xi1[static_cast<std::size_t>((j + 1) * (n1 + 1) + I)]; }
  const FluxVector& f1(int I, int j) const { return xi1[static_cast<std::size_t>((j + 1) * (n1 + 1) + I)]; }
  FluxVector& f2(int i, int J) { return xi2[static_cast<std::size_t>(J * (n1 + 2) + (i + 1))]; }
  const FluxVector& f2(int i, int J) const { return xi2[static_cast<std::size_t>(J * (n1 + 2) + (i + 1))]; }
};

FaceFluxes compute_face_fluxes(const Field& field, ModelKind model, const SchemeConfig& cfg);

struct RhsEvaluation {
  FaceFluxes faces;
  CellArray<StateVector> rate;    ///< L(W), interior cells only
  std::vector<Vec3> velocity;     ///< M N at interior cells, xi1 fastest
};

/// Full semi-discrete right-hand side; ghosts of `field` must be filled.
RhsEvaluation evaluate_rhs(const Field& field, ModelKind model, const SchemeConfig& cfg);

CellArray<StateVector> rhs(const Field& field, ModelKind model, const SchemeConfig& cfg);

/// Largest stable step. Throws ZeroSpeed if the front is linear everywhere.
double cfl_dt(const Field& field, ModelKind model, const SchemeConfig& cfg);

/// Velocities M N at interior cells for the two Runge-Kutta stages, in the
/// order they were evaluated. Feeds the ray tracker.
struct StageVelocities {
  std::vector<Vec3> stage0;
  std::vector<Vec3> stage1;
};

/// Two-stage TVD Runge-Kutta step. With `ct` non-null the KCL slots are
/// redefined from staggered potentials after each stage; with `ct == nullptr`
/// they follow the plain finite-volume update.
StageVelocities rk2_step(Field& field, CtState* ct, double dt, ModelKind model, const SchemeConfig& cfg);

}  // namespace kcl
