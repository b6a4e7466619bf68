#pragma once

#include <array>

#include "kcl/geometry_state.hpp"
#include "kcl/grid.hpp"

namespace kcl {

/// Signed flux actually differenced in the update: slots 1-3 of F1 and
/// slots 4-6 of F2 hold -M N, everything else is zero.
FluxVector flux(const PrimitiveState& p, Axis direction);
inline FluxVector flux_xi1(const PrimitiveState& p) { return flux(p, Axis::Xi1); }
inline FluxVector flux_xi2(const PrimitiveState& p) { return flux(p, Axis::Xi2); }

FluxVector source(const PrimitiveState& p, ModelKind model);

/// Nonzero characteristic speed lambda_1 for the unit direction (e1, e2).
double char_speed(const PrimitiveState& p, double e1, double e2);

/// Spectral radius of the flux Jacobian along one lattice axis.
/// Throws ImaginarySpeed when M < 1.
double max_char_speed(const PrimitiveState& p, Axis direction);

struct PencilMatrix {
  std::array<std::array<double, 8>, 8> a{};
  double e1 = 0.0;
  double e2 = 0.0;
  double lambda = 0.0;

  double operator()(int r, int c) const { return a[r][c]; }
};

/// Coefficient matrices of A V_t + B1 V_xi1 + B2 V_xi2 = C in the primitive
/// variables V = (U1, U2, V1, V2, M, G1, G2, calV). The source vector C is not
/// needed for the characteristic analysis and is omitted.
struct QuasiLinearForm {
  std::array<std::array<double, 8>, 8> A{};
  std::array<std::array<double, 8>, 8> B1{};
  std::array<std::array<double, 8>, 8> B2{};
};

/// Throws SingularFrame if |U3| or |V3| < 1e-10 or calV < 1e-12.
QuasiLinearForm quasi_linear_form(const PrimitiveState& p);

/// e1 B1 + e2 B2 - lambda A. Test-side oracle only; never used in time stepping.
PencilMatrix assemble_pencil(const PrimitiveState& p, double e1, double e2, double lambda);

}  // namespace kcl
