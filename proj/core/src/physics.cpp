#include "kcl/physics.hpp"

#include <cmath>
#include <string>

#include "kcl/error.hpp"

namespace kcl {

FluxVector flux(const PrimitiveState& p, Axis direction) {
  FluxVector f;
  const Vec3 mn = p.M * p.N;
  const int offset = direction == Axis::Xi1 ? 0 : 3;
  f[offset + 0] = -mn.x;
  f[offset + 1] = -mn.y;
  f[offset + 2] = -mn.z;
  return f;
}

FluxVector source(const PrimitiveState& p, ModelKind model) {
  FluxVector s;
  if (model == ModelKind::Wnlrt) return s;
  const double area = p.G1 * p.G2 * p.sin_psi;
  const double h = p.M - 1.0;
  const double growth = std::exp(2.0 * h);
  s[6] = -2.0 * p.M * h * h * growth * area * p.calV;
  // planar limit: dV/dt = -2 V^2
  s[7] = -2.0 * (p.M + 1.0) * growth * area * p.calV * p.calV * p.calV;
  return s;
}

double char_speed(const PrimitiveState& p, double e1, double e2) {
  if (p.M < 1.0) {
    throw SolverError(ErrorKind::ImaginarySpeed, "M = " + std::to_string(p.M));
  }
  const double metric = e1 * e1 / (p.G1 * p.G1) - 2.0 * e1 * e2 * p.cos_psi / (p.G1 * p.G2) +
                        e2 * e2 / (p.G2 * p.G2);
  return std::sqrt((p.M - 1.0) / (2.0 * p.sin_psi * p.sin_psi) * metric);
}

double max_char_speed(const PrimitiveState& p, Axis direction) {
  if (p.M < 1.0) {
    throw SolverError(ErrorKind::ImaginarySpeed, "M = " + std::to_string(p.M));
  }
  const double g = direction == Axis::Xi1 ? p.G1 : p.G2;
  return std::sqrt((p.M - 1.0) / 2.0) / (p.sin_psi * g);
}

QuasiLinearForm quasi_linear_form(const PrimitiveState& p) {
  const double U1 = p.U.x, U2 = p.U.y, U3 = p.U.z;
  const double V1 = p.V.x, V2 = p.V.y, V3 = p.V.z;
  const double N1 = p.N.x, N2 = p.N.y;
  const double M = p.M, G1 = p.G1, G2 = p.G2, calV = p.calV;
  if (std::abs(U3) < 1e-10 || std::abs(V3) < 1e-10) {
    throw SolverError(ErrorKind::SingularFrame, "U3 or V3 vanishes");
  }
  if (calV < 1e-12) {
    throw SolverError(ErrorKind::SingularFrame, "calV vanishes");
  }
  // chi is the angle between U and V.
  const double s = p.sin_psi;
  const double c = p.cos_psi;
  const double cot = c / s;
  const double g12 = G1 * G2;

  QuasiLinearForm q;
  auto& A = q.A;
  A[0][0] = G1;
  A[1][1] = G1;
  A[2][2] = G2;
  A[3][3] = G2;
  A[4][0] = -g12 * N2 * cot / U3;
  A[4][1] = g12 * N1 * cot / U3;
  A[4][2] = g12 * N2 * cot / V3;
  A[4][3] = -g12 * N1 * cot / V3;
  A[4][4] = 2.0 * M / (M - 1.0) * g12;
  A[4][5] = G2;
  A[4][6] = G1;
  A[5][5] = 1.0;
  A[6][6] = 1.0;
  A[7][0] = A[4][0];
  A[7][1] = A[4][1];
  A[7][2] = A[4][2];
  A[7][3] = A[4][3];
  A[7][4] = 2.0 * g12;
  A[7][5] = G2;
  A[7][6] = G1;
  A[7][7] = 2.0 * g12 / calV;

  auto& B1 = q.B1;
  B1[0][0] = -M / U3 * (U1 * U2 + N1 * N2) * cot;
  B1[0][1] = M / U3 * (U1 * U1 + N1 * N1 - 1.0) * cot;
  B1[0][2] = M / (V3 * s) * (U2 * V1 + N1 * N2 * c);
  B1[0][3] = -M / (V3 * s) * (U1 * V1 + (N1 * N1 - 1.0) * c);
  B1[0][4] = -N1;
  B1[1][0] = -M / U3 * (U2 * U2 + N2 * N2 - 1.0) * cot;
  B1[1][1] = M / U3 * (U1 * U2 + N1 * N2) * cot;
  B1[1][2] = M / (V3 * s) * (U2 * V2 + (N2 * N2 - 1.0) * c);
  B1[1][3] = -M / (V3 * s) * (U1 * V2 + N1 * N2 * c);
  B1[1][4] = -N2;
  B1[5][0] = -M / (U3 * s) * (V2 - U2 * c);
  B1[5][1] = M / (U3 * s) * (V1 - U1 * c);

  auto& B2 = q.B2;
  B2[2][0] = -M / (U3 * s) * (U1 * V2 + N1 * N2 * c);
  B2[2][1] = M / (U3 * s) * (U1 * V1 + (N1 * N1 - 1.0) * c);
  B2[2][2] = M / V3 * (V1 * V2 + N1 * N2) * cot;
  B2[2][3] = -M / V3 * (V1 * V1 + N1 * N1 - 1.0) * cot;
  B2[2][4] = -N1;
  B2[3][0] = -M / (U3 * s) * (U2 * V2 + (N2 * N2 - 1.0) * c);
  B2[3][1] = M / (U3 * s) * (U2 * V1 + N1 * N2 * c);
  B2[3][2] = M / V3 * (V2 * V2 + N2 * N2 - 1.0) * cot;
  B2[3][3] = -M / V3 * (V1 * V2 + N1 * N2) * cot;
  B2[3][4] = -N2;
  B2[6][2] = M / (V3 * s) * (U2 - V2 * c);
  B2[6][3] = -M / (V3 * s) * (U1 - V1 * c);
  return q;
}

PencilMatrix assemble_pencil(const PrimitiveState& p, double e1, double e2, double lambda) {
  const QuasiLinearForm q = quasi_linear_form(p);
  PencilMatrix m;
  m.e1 = e1;
  m.e2 = e2;
  m.lambda = lambda;
  for (int r = 0; r < 8; ++r) {
    for (int c = 0; c < 8; ++c) {
      m.a[r][c] = e1 * q.B1[r][c] + e2 * q.B2[r][c] - lambda * q.A[r][c];
    }
  }
  return m;
}

}  // namespace kcl
