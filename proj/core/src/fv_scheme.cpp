#include "kcl/fv_scheme.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "kcl/constrained_transport.hpp"
#include "kcl/error.hpp"
#include "kcl/physics.hpp"

namespace kcl {

std::string_view to_string(Limiter limiter) { return limiter == Limiter::Cweno ? "cweno" : "minmod"; }

Limiter limiter_from_string(std::string_view text) {
  if (text == "cweno") return Limiter::Cweno;
  if (text == "minmod") return Limiter::Minmod;
  throw SolverError(ErrorKind::BadConfig, "unknown limiter '" + std::string(text) + "'");
}

void SchemeConfig::validate() const {
  if (!(cfl_nu > 0.0 && cfl_nu < 1.0)) {
    throw SolverError(ErrorKind::BadParameter, "cfl_nu must lie in (0, 1)");
  }
  if (!(cweno_eps > 0.0) || !(cweno_power > 0.0)) {
    throw SolverError(ErrorKind::BadParameter, "cweno_eps and cweno_power must be positive");
  }
  if (!(newton.residual_tol > 0.0) || newton.max_iter < 1) {
    throw SolverError(ErrorKind::BadParameter, "invalid Newton options");
  }
}

FaceFluxes::FaceFluxes(int n1_, int n2_)
    : n1(n1_), n2(n2_),
      xi1(static_cast<std::size_t>((n1_ + 1) * (n2_ + 2))),
      xi2(static_cast<std::size_t>((n1_ + 2) * (n2_ + 1))) {}

namespace {

int wrap(int i, int n) { return ((i % n) + n) % n; }

}  // namespace

void fill_ghosts(Field& field) {
  const GridSpec& g = field.grid;
  auto& w = field.w;
  const int gh = g.ghost;
  for (int j = 0; j < g.n2; ++j) {
    for (int k = 1; k <= gh; ++k) {
      if (g.bc_xi1 == BoundaryKind::Periodic) {
        w(-k, j) = w(wrap(-k, g.n1), j);
        w(g.n1 - 1 + k, j) = w(wrap(g.n1 - 1 + k, g.n1), j);
      } else {
        w(-k, j) = w(0, j);
        w(g.n1 - 1 + k, j) = w(g.n1 - 1, j);
      }
    }
  }
  for (int i = -gh; i < g.n1 + gh; ++i) {
    for (int k = 1; k <= gh; ++k) {
      if (g.bc_xi2 == BoundaryKind::Periodic) {
        w(i, -k) = w(i, wrap(-k, g.n2));
        w(i, g.n2 - 1 + k) = w(i, wrap(g.n2 - 1 + k, g.n2));
      } else {
        w(i, -k) = w(i, 0);
        w(i, g.n2 - 1 + k) = w(i, g.n2 - 1);
      }
    }
  }
}

double limited_slope(double w_minus, double w_centre, double w_plus, double h, const SchemeConfig& cfg) {
  const double s_left = (w_centre - w_minus) / h;
  const double s_right = (w_plus - w_centre) / h;
  if (cfg.limiter == Limiter::Minmod) {
    if (s_left * s_right <= 0.0) return 0.0;
    return s_left > 0.0 ? std::min(s_left, s_right) : std::max(s_left, s_right);
  }
  const double s_centre = (w_plus - w_minus) / (2.0 * h);
  auto indicator = [&](double s) {
    const double base = cfg.cweno_eps + s * s;
    return cfg.cweno_power == 2.0 ? base * base : std::pow(base, cfg.cweno_power);
  };
  const double a_left = 0.25 / indicator(s_left);
  const double a_centre = 0.5 / indicator(s_centre);
  const double a_right = 0.25 / indicator(s_right);
  return (a_left * s_left + a_centre * s_centre + a_right * s_right) / (a_left + a_centre + a_right);
}

Reconstruction reconstruct(const Field& field, Axis direction, ModelKind model, const SchemeConfig& cfg) {
  const GridSpec& g = field.grid;
  const int nv = num_equations(model);
  const double h = g.spacing(direction);
  const int di = direction == Axis::Xi1 ? 1 : 0;
  const int dj = 1 - di;

  Reconstruction rec{CellArray<ConservedState>(g), CellArray<ConservedState>(g)};
  for (int j = -1; j <= g.n2; ++j) {
    for (int i = -1; i <= g.n1; ++i) {
      const ConservedState& wm = field.w(i - di, j - dj);
      const ConservedState& wc = field.w(i, j);
      const ConservedState& wp = field.w(i + di, j + dj);
      ConservedState lo = wc;
      ConservedState hi = wc;
      for (int k = 0; k < nv; ++k) {
        const double half_jump = 0.5 * h * limited_slope(wm[k], wc[k], wp[k], h, cfg);
        lo[k] = wc[k] - half_jump;
        hi[k] = wc[k] + half_jump;
      }
      // Energy slots must stay admissible at the faces; fall back to a flat
      // profile in that component otherwise.
      if (!(lo[6] > 0.0) || !(hi[6] > 0.0)) {
        lo[6] = wc[6];
        hi[6] = wc[6];
      }
      if (nv > 7 && (lo[7] < 0.0 || hi[7] < 0.0)) {
        lo[7] = wc[7];
        hi[7] = wc[7];
      }
      rec.minus(i, j) = lo;
      rec.plus(i, j) = hi;
    }
  }
  return rec;
}

namespace {

FluxVector kt_flux_from(const ConservedState& wl, const PrimitiveState& pl, const ConservedState& wr,
                        const PrimitiveState& pr, Axis direction, int nv) {
  const double a = std::max(max_char_speed(pl, direction), max_char_speed(pr, direction));
  const FluxVector fl = flux(pl, direction);
  const FluxVector fr = flux(pr, direction);
  FluxVector f;
  for (int k = 0; k < nv; ++k) {
    f[k] = 0.5 * (fl[k] + fr[k]) - 0.5 * a * (wr[k] - wl[k]);
  }
  return f;
}

}  // namespace

FluxVector kt_interface_flux(const ConservedState& wl, const ConservedState& wr, Axis direction,
                             ModelKind model, const MachSolverOptions& newton) {
  const PrimitiveState pl = recover_primitives(wl, model, newton);
  const PrimitiveState pr = recover_primitives(wr, model, newton);
  return kt_flux_from(wl, pl, wr, pr, direction, num_equations(model));
}

FaceFluxes compute_face_fluxes(const Field& field, ModelKind model, const SchemeConfig& cfg) {
  const GridSpec& g = field.grid;
  FaceFluxes faces(g.n1, g.n2);
  {
    const Reconstruction rec = reconstruct(field, Axis::Xi1, model, cfg);
    for (int j = -1; j <= g.n2; ++j) {
      for (int I = 0; I <= g.n1; ++I) {
        faces.f1(I, j) = kt_interface_flux(rec.plus(I - 1, j), rec.minus(I, j), Axis::Xi1, model, cfg.newton);
      }
    }
  }
  {
    const Reconstruction rec = reconstruct(field, Axis::Xi2, model, cfg);
    for (int J = 0; J <= g.n2; ++J) {
      for (int i = -1; i <= g.n1; ++i) {
        faces.f2(i, J) = kt_interface_flux(rec.plus(i, J - 1), rec.minus(i, J), Axis::Xi2, model, cfg.newton);
      }
    }
  }
  return faces;
}

RhsEvaluation evaluate_rhs(const Field& field, ModelKind model, const SchemeConfig& cfg) {
  const GridSpec& g = field.grid;
  const int nv = num_equations(model);
  const double h1 = g.h1();
  const double h2 = g.h2();

  RhsEvaluation out;
  out.faces = compute_face_fluxes(field, model, cfg);
  out.rate = CellArray<StateVector>(g);
  out.velocity.resize(static_cast<std::size_t>(g.n1 * g.n2));
  for (int j = 0; j < g.n2; ++j) {
    for (int i = 0; i < g.n1; ++i) {
      const PrimitiveState p = recover_primitives(field.w(i, j), model, cfg.newton);
      const FluxVector s = source(p, model);
      const FluxVector& fw = out.faces.f1(i, j);
      const FluxVector& fe = out.faces.f1(i + 1, j);
      const FluxVector& fs = out.faces.f2(i, j);
      const FluxVector& fn = out.faces.f2(i, j + 1);
      StateVector& r = out.rate(i, j);
      for (int k = 0; k < nv; ++k) {
        r[k] = -(fe[k] - fw[k]) / h1 - (fn[k] - fs[k]) / h2 + s[k];
      }
      out.velocity[static_cast<std::size_t>(j * g.n1 + i)] = p.M * p.N;
    }
  }
  return out;
}

CellArray<StateVector> rhs(const Field& field, ModelKind model, const SchemeConfig& cfg) {
  return evaluate_rhs(field, model, cfg).rate;
}

double cfl_dt(const Field& field, ModelKind model, const SchemeConfig& cfg) {
  const GridSpec& g = field.grid;
  double rho1 = 0.0;
  double rho2 = 0.0;
  for (int j = 0; j < g.n2; ++j) {
    for (int i = 0; i < g.n1; ++i) {
      const PrimitiveState p = recover_primitives(field.w(i, j), model, cfg.newton);
      rho1 = std::max(rho1, max_char_speed(p, Axis::Xi1));
      rho2 = std::max(rho2, max_char_speed(p, Axis::Xi2));
    }
  }
  if (rho1 < 1e-14 && rho2 < 1e-14) {
    throw SolverError(ErrorKind::ZeroSpeed, "all characteristic speeds vanish");
  }
  return cfg.cfl_nu / std::max(rho1 / g.h1(), rho2 / g.h2());
}

StageVelocities rk2_step(Field& field, CtState* ct, double dt, ModelKind model, const SchemeConfig& cfg) {
  const GridSpec& g = field.grid;
  const int nv = num_equations(model);
  const CellArray<ConservedState> base = field.w;
  NodeArray<Vec3> base_potential;
  if (ct != nullptr) base_potential = ct->potential;

  StageVelocities stages;

  fill_ghosts(field);
  RhsEvaluation first = evaluate_rhs(field, model, cfg);
  for (int j = 0; j < g.n2; ++j) {
    for (int i = 0; i < g.n1; ++i) {
      ConservedState& w = field.w(i, j);
      const StateVector& r = first.rate(i, j);
      for (int k = 0; k < nv; ++k) w[k] = base(i, j)[k] + dt * r[k];
    }
  }
  if (ct != nullptr) {
    update_potentials(*ct, base_potential, first.faces, dt, RkStage::First);
    center_interp(*ct, field);
  }
  stages.stage0 = std::move(first.velocity);

  fill_ghosts(field);
  RhsEvaluation second = evaluate_rhs(field, model, cfg);
  for (int j = 0; j < g.n2; ++j) {
    for (int i = 0; i < g.n1; ++i) {
      ConservedState& w = field.w(i, j);
      const StateVector& r = second.rate(i, j);
      for (int k = 0; k < nv; ++k) {
        w[k] = 0.5 * base(i, j)[k] + 0.5 * w[k] + 0.5 * dt * r[k];
      }
    }
  }
  if (ct != nullptr) {
    update_potentials(*ct, base_potential, second.faces, dt, RkStage::Second);
    center_interp(*ct, field);
  }
  stages.stage1 = std::move(second.velocity);

  fill_ghosts(field);
  field.t += dt;
  return stages;
}

}  // namespace kcl
