#include "kcl/geometry_state.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "kcl/error.hpp"

namespace kcl {

namespace {

constexpr double kMinSinPsi = 1e-10;
constexpr double kSonicMargin = 1e-12;

// theta(h) = h^2 e^{2h} - kappa with h = M - 1.
struct EnergyResidual {
  double kappa;
  double value(double h) const { return h * h * std::exp(2.0 * h) - kappa; }
  double slope(double h) const { return 2.0 * h * (1.0 + h) * std::exp(2.0 * h); }
};

}  // namespace

std::string_view to_string(ModelKind model) { return model == ModelKind::Srt ? "srt" : "wnlrt"; }

ModelKind model_from_string(std::string_view text) {
  if (text == "srt") return ModelKind::Srt;
  if (text == "wnlrt") return ModelKind::Wnlrt;
  throw SolverError(ErrorKind::BadConfig, "unknown model '" + std::string(text) + "'");
}

PrimitiveState make_primitive(const Vec3& x_xi1, const Vec3& x_xi2, double mach, double calV) {
  PrimitiveState p;
  p.G1 = norm(x_xi1);
  p.G2 = norm(x_xi2);
  p.U = x_xi1 / p.G1;
  p.V = x_xi2 / p.G2;
  const Vec3 n = cross(p.U, p.V);
  p.sin_psi = std::min(1.0, norm(n));
  p.cos_psi = dot(p.U, p.V);
  p.N = n / norm(n);
  p.M = mach;
  p.calV = calV;
  return p;
}

double energy_kernel(double mach) {
  const double h = mach - 1.0;
  return h * h * std::exp(2.0 * h);
}

double solve_mach(double kappa, const MachSolverOptions& options) {
  if (!(kappa > 0.0) || !std::isfinite(kappa)) {
    throw SolverError(ErrorKind::NonPositiveEnergy, "kappa = " + std::to_string(kappa));
  }
  const EnergyResidual theta{kappa};
  const double tol = options.residual_tol * std::max(1.0, kappa);

  // theta is increasing and convex on (0, inf); h0 = sqrt(kappa) lies right of
  // the root, so Newton descends monotonically and the bracket only guards
  // against the slow first steps for large kappa.
  double lo = 0.0;
  double hi = std::sqrt(kappa) + 1.0;
  double h = std::sqrt(kappa);
  double step_old = hi - lo;
  double step = step_old;

  for (int iter = 0; iter < options.max_iter; ++iter) {
    const double f = theta.value(h);
    const double df = theta.slope(h);
    if (f < 0.0) {
      lo = h;
    } else {
      hi = h;
    }
    const bool newton_leaves_bracket = ((h - hi) * df - f) * ((h - lo) * df - f) > 0.0;
    const bool newton_too_slow = std::abs(2.0 * f) > std::abs(step_old * df);
    step_old = step;
    if (df <= 0.0 || newton_leaves_bracket || newton_too_slow) {
      step = 0.5 * (hi - lo);
      h = lo + step;
    } else {
      step = f / df;
      h -= step;
    }
    if (std::abs(step) <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(h, 1e-300)) {
      if (std::abs(theta.value(h)) <= tol) return 1.0 + h;
    }
  }
  throw SolverError(ErrorKind::NoConvergence,
                    "Mach inversion did not converge for kappa = " + std::to_string(kappa));
}

PrimitiveState recover_primitives(const ConservedState& w, ModelKind model,
                                  const MachSolverOptions& options) {
  PrimitiveState p;
  const Vec3 gu = w.gu();
  const Vec3 gv = w.gv();
  p.G1 = norm(gu);
  p.G2 = norm(gv);
  if (!(p.G1 > 0.0) || !(p.G2 > 0.0)) {
    throw SolverError(ErrorKind::DegenerateTangents, "zero-length tangent");
  }
  p.U = gu / p.G1;
  p.V = gv / p.G2;
  const Vec3 n = cross(p.U, p.V);
  const double s = norm(n);
  if (!(s >= kMinSinPsi)) {
    throw SolverError(ErrorKind::DegenerateTangents, "tangents are parallel, sin(psi) = " + std::to_string(s));
  }
  p.sin_psi = std::min(1.0, s);
  p.cos_psi = dot(p.U, p.V);
  p.N = n / s;

  const double w7 = w.w7();
  if (!(w7 > 0.0)) {
    throw SolverError(ErrorKind::NonPositiveEnergy, "w7 = " + std::to_string(w7));
  }
  const double area = p.G1 * p.G2 * p.sin_psi;
  p.M = solve_mach(w7 / area, options);
  if (p.M <= 1.0 + kSonicMargin) {
    throw SolverError(ErrorKind::SonicState, "recovered M - 1 = " + std::to_string(p.M - 1.0));
  }
  if (model == ModelKind::Srt) {
    const double w8 = std::max(0.0, w.w8());
    p.calV = std::sqrt(w8 / (std::exp(2.0 * (p.M - 1.0)) * area));
  }
  return p;
}

ConservedState conserved_from_primitives(const PrimitiveState& p, ModelKind model) {
  ConservedState w;
  w.set_gu(p.G1 * p.U);
  w.set_gv(p.G2 * p.V);
  const double area = p.G1 * p.G2 * p.sin_psi;
  w[6] = energy_kernel(p.M) * area;
  if (model == ModelKind::Srt) {
    w[7] = std::exp(2.0 * (p.M - 1.0)) * area * p.calV * p.calV;
  }
  return w;
}

double mach_from_amplitude(double mu, double epsilon, double gamma, ModelKind model) {
  if (!(gamma > 1.0)) {
    throw SolverError(ErrorKind::BadParameter, "gamma must exceed 1");
  }
  const double coeff = model == ModelKind::Srt ? 0.25 : 0.5;
  return 1.0 + epsilon * (gamma + 1.0) * coeff * mu;
}

}  // namespace kcl
