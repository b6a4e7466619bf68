#pragma once

#include <array>
#include <string_view>

#include "kcl/vec3.hpp"

namespace kcl {

enum class ModelKind {
  Srt,    ///< shock ray theory: 8 balance laws with sources
  Wnlrt,  ///< weakly nonlinear ray theory: 7 homogeneous conservation laws
};

std::string_view to_string(ModelKind model);
ModelKind model_from_string(std::string_view text);

inline constexpr int kMaxVars = 8;

constexpr int num_equations(ModelKind model) { return model == ModelKind::Srt ? 8 : 7; }

/// Eight slots in conserved ordering: (G1 U, G2 V, w7, w8). Also used for
/// fluxes and sources, which share that layout.
struct StateVector {
  std::array<double, kMaxVars> c{};

  double& operator[](int k) { return c[static_cast<std::size_t>(k)]; }
  double operator[](int k) const { return c[static_cast<std::size_t>(k)]; }

  Vec3 gu() const { return {c[0], c[1], c[2]}; }
  Vec3 gv() const { return {c[3], c[4], c[5]}; }
  double w7() const { return c[6]; }
  double w8() const { return c[7]; }

  void set_gu(const Vec3& v) { c[0] = v.x; c[1] = v.y; c[2] = v.z; }
  void set_gv(const Vec3& v) { c[3] = v.x; c[4] = v.y; c[5] = v.z; }

  StateVector& operator+=(const StateVector& o) {
    for (int k = 0; k < kMaxVars; ++k) c[k] += o.c[k];
    return *this;
  }
  StateVector& operator-=(const StateVector& o) {
    for (int k = 0; k < kMaxVars; ++k) c[k] -= o.c[k];
    return *this;
  }
  StateVector& operator*=(double s) {
    for (auto& v : c) v *= s;
    return *this;
  }

  friend bool operator==(const StateVector&, const StateVector&) = default;
};

inline StateVector operator+(StateVector a, const StateVector& b) { return a += b; }
inline StateVector operator-(StateVector a, const StateVector& b) { return a -= b; }
inline StateVector operator*(StateVector a, double s) { return a *= s; }
inline StateVector operator*(double s, StateVector a) { return a *= s; }

using ConservedState = StateVector;
using FluxVector = StateVector;

struct PrimitiveState {
  Vec3 U;
  Vec3 V;
  Vec3 N;
  double G1 = 1.0;
  double G2 = 1.0;
  double M = 1.0;
  double calV = 0.0;
  double sin_psi = 1.0;
  double cos_psi = 0.0;
};

/// Builds a primitive state from two (not necessarily unit) tangents and fills
/// in N, G1, G2 and the angle functions consistently.
PrimitiveState make_primitive(const Vec3& x_xi1, const Vec3& x_xi2, double mach, double calV);

struct MachSolverOptions {
  double residual_tol = 1e-14;
  int max_iter = 100;
};

/// Energy density in the w7 slot per unit ray-tube area: (M-1)^2 e^{2(M-1)}.
double energy_kernel(double mach);

/// Unique M in (1, inf) with (M-1)^2 e^{2(M-1)} = kappa. Safeguarded Newton
/// with bisection fallback; throws NoConvergence or NonPositiveEnergy.
double solve_mach(double kappa, const MachSolverOptions& options = {});

/// Recovers (U, V, N, G1, G2, M, calV) from a conserved cell state.
/// Throws DegenerateTangents, NonPositiveEnergy or SonicState.
PrimitiveState recover_primitives(const ConservedState& w, ModelKind model,
                                  const MachSolverOptions& options = {});

ConservedState conserved_from_primitives(const PrimitiveState& p, ModelKind model);

/// Front Mach number from the small-amplitude expansion (M for Srt, m for Wnlrt).
double mach_from_amplitude(double mu, double epsilon, double gamma, ModelKind model);

}  // namespace kcl
