#include "kcl/scenarios.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "kcl/error.hpp"

namespace kcl {

namespace {

constexpr double kPi = std::numbers::pi;

struct NamedKind {
  ScenarioKind kind;
  std::string_view name;
};

constexpr NamedKind kNames[] = {
    {ScenarioKind::Dip, "dip"},
    {ScenarioKind::PeriodicPulse, "periodic_pulse"},
    {ScenarioKind::CosExp, "cos_exp"},
    {ScenarioKind::Cylinder, "cylinder"},
    {ScenarioKind::Sphere, "sphere"},
    {ScenarioKind::ComparisonDip, "comparison_dip"},
    {ScenarioKind::Planar, "planar"},
};

bool is_graph(ScenarioKind kind) { return kind != ScenarioKind::Cylinder && kind != ScenarioKind::Sphere; }

// Height f(x1, x2) and its gradient for graph-type fronts.
struct Height {
  double f = 0.0;
  double f1 = 0.0;
  double f2 = 0.0;
};

Height graph_height(const ScenarioConfig& c, double x1, double x2) {
  Height h;
  switch (c.kind) {
    case ScenarioKind::Dip:
    case ScenarioKind::ComparisonDip: {
      const double d = 1.0 + x1 * x1 / (c.alpha * c.alpha) + x2 * x2 / (c.beta * c.beta);
      h.f = -c.kappa / d;
      h.f1 = c.kappa / (d * d) * 2.0 * x1 / (c.alpha * c.alpha);
      h.f2 = c.kappa / (d * d) * 2.0 * x2 / (c.beta * c.beta);
      break;
    }
    case ScenarioKind::PeriodicPulse:
      h.f = c.kappa * (2.0 - std::cos(kPi * x1 / c.a) - std::cos(kPi * x2 / c.b));
      h.f1 = c.kappa * kPi / c.a * std::sin(kPi * x1 / c.a);
      h.f2 = c.kappa * kPi / c.b * std::sin(kPi * x2 / c.b);
      break;
    case ScenarioKind::CosExp: {
      const double r = std::hypot(x1, x2);
      const double decay = std::exp(-c.beta * r);
      h.f = c.kappa * std::cos(c.alpha * r) * decay;
      if (r > 0.0) {
        const double fr = -c.kappa * decay * (c.alpha * std::sin(c.alpha * r) + c.beta * std::cos(c.alpha * r));
        h.f1 = fr * x1 / r;
        h.f2 = fr * x2 / r;
      }
      break;
    }
    default:
      break;
  }
  return h;
}

}  // namespace

std::string_view to_string(ScenarioKind kind) {
  for (const auto& n : kNames) {
    if (n.kind == kind) return n.name;
  }
  return "unknown";
}

ScenarioKind scenario_from_string(std::string_view text) {
  for (const auto& n : kNames) {
    if (n.name == text) return n.kind;
  }
  throw SolverError(ErrorKind::BadConfig, "unknown scenario '" + std::string(text) + "'");
}

const std::vector<ScenarioKind>& all_scenarios() {
  static const std::vector<ScenarioKind> kinds = [] {
    std::vector<ScenarioKind> v;
    for (const auto& n : kNames) v.push_back(n.kind);
    return v;
  }();
  return kinds;
}

void ScenarioConfig::validate() const {
  grid.validate();
  auto need = [](bool ok, const char* what) {
    if (!ok) throw SolverError(ErrorKind::BadParameter, what);
  };
  need(std::isfinite(m0) && m0 > 1.0, "m0 must exceed 1");
  need(std::isfinite(v0) && v0 >= 0.0, "v0 must be non-negative");
  need(std::isfinite(perturb_amp) && m0 - std::abs(perturb_amp) > 1.0, "perturbed Mach number must stay above 1");
  need(std::isfinite(perturb_nu1) && std::isfinite(perturb_nu2), "perturbation wave numbers must be finite");
  switch (kind) {
    case ScenarioKind::Dip:
    case ScenarioKind::ComparisonDip:
      need(alpha > 0.0 && beta > 0.0, "dip needs alpha, beta > 0");
      need(std::isfinite(kappa), "kappa must be finite");
      break;
    case ScenarioKind::PeriodicPulse:
      need(a > 0.0 && b > 0.0, "periodic pulse needs a, b > 0");
      need(std::isfinite(kappa), "kappa must be finite");
      break;
    case ScenarioKind::CosExp:
      need(alpha > 0.0 && beta >= 0.0, "cos-exp needs alpha > 0, beta >= 0");
      need(std::isfinite(kappa), "kappa must be finite");
      break;
    case ScenarioKind::Cylinder:
      need(radius > 0.0, "radius must be positive");
      break;
    case ScenarioKind::Sphere:
      need(radius > 0.0, "radius must be positive");
      need(grid.xi1_min > 0.0 && grid.xi1_max < kPi, "sphere lattice must stay clear of the poles");
      break;
    case ScenarioKind::Planar:
      break;
  }
}

ScenarioConfig default_scenario(ScenarioKind kind) {
  ScenarioConfig c;
  c.kind = kind;
  c.model = ModelKind::Srt;
  c.m0 = 1.2;
  c.v0 = 0.2;
  GridSpec& g = c.grid;
  switch (kind) {
    case ScenarioKind::Dip:
      c.kappa = 0.5;
      c.alpha = 1.5;
      c.beta = 3.0;
      g = GridSpec{128, 128, -8.0, 8.0, -8.0, 8.0, BoundaryKind::Extrapolation, BoundaryKind::Extrapolation, 2};
      break;
    case ScenarioKind::ComparisonDip:
      c.kappa = 0.5;
      c.alpha = 1.5;
      c.beta = 1.5;
      g = GridSpec{128, 128, -8.0, 8.0, -8.0, 8.0, BoundaryKind::Extrapolation, BoundaryKind::Extrapolation, 2};
      break;
    case ScenarioKind::PeriodicPulse:
      c.kappa = 0.1;
      c.a = 2.0;
      c.b = 2.0;
      // two periods in each direction
      g = GridSpec{128, 128, -4.0, 4.0, -4.0, 4.0, BoundaryKind::Periodic, BoundaryKind::Periodic, 2};
      break;
    case ScenarioKind::CosExp:
      c.kappa = 0.05;
      c.alpha = 1.0;
      c.beta = 0.15;
      g = GridSpec{128, 128, -16.0, 16.0, -16.0, 16.0, BoundaryKind::Extrapolation, BoundaryKind::Extrapolation, 2};
      break;
    case ScenarioKind::Cylinder:
      c.radius = 2.0;
      c.perturb_amp = 0.05;
      c.perturb_nu1 = 0.0;
      c.perturb_nu2 = 8.0;
      g = GridSpec{64, 256, -kPi / 2.0, kPi / 2.0, 0.0, 2.0 * kPi, BoundaryKind::Extrapolation,
                   BoundaryKind::Periodic, 2};
      break;
    case ScenarioKind::Sphere:
      c.radius = 2.0;
      c.perturb_amp = 0.05;
      c.perturb_nu1 = 4.0;
      c.perturb_nu2 = 8.0;
      g = GridSpec{64, 128, kPi / 15.0, 14.0 * kPi / 15.0, 0.0, 2.0 * kPi, BoundaryKind::Extrapolation,
                   BoundaryKind::Periodic, 2};
      break;
    case ScenarioKind::Planar:
      // no length scale; the extent only sets dt through the CFL limit
      g = GridSpec{64, 64, 0.0, 0.25, 0.0, 0.25, BoundaryKind::Extrapolation, BoundaryKind::Extrapolation, 2};
      break;
  }
  return c;
}

Vec3 initial_position(const ScenarioConfig& cfg, double xi1, double xi2) {
  const double r = cfg.radius;
  switch (cfg.kind) {
    case ScenarioKind::Cylinder:
      return {r * std::cos(xi2), r * std::sin(xi2), xi1};
    case ScenarioKind::Sphere:
      return {r * std::sin(xi1) * std::cos(xi2), r * std::sin(xi1) * std::sin(xi2), -r * std::cos(xi1)};
    default:
      return {xi1, xi2, graph_height(cfg, xi1, xi2).f};
  }
}

std::pair<Vec3, Vec3> initial_tangents(const ScenarioConfig& cfg, double xi1, double xi2) {
  const double r = cfg.radius;
  switch (cfg.kind) {
    case ScenarioKind::Cylinder:
      return {Vec3{0.0, 0.0, 1.0}, Vec3{-r * std::sin(xi2), r * std::cos(xi2), 0.0}};
    case ScenarioKind::Sphere:
      return {Vec3{r * std::cos(xi1) * std::cos(xi2), r * std::cos(xi1) * std::sin(xi2), r * std::sin(xi1)},
              Vec3{-r * std::sin(xi1) * std::sin(xi2), r * std::sin(xi1) * std::cos(xi2), 0.0}};
    default: {
      const Height h = graph_height(cfg, xi1, xi2);
      return {Vec3{1.0, 0.0, h.f1}, Vec3{0.0, 1.0, h.f2}};
    }
  }
}

double initial_mach(const ScenarioConfig& cfg, double xi1, double xi2) {
  if (cfg.perturb_amp == 0.0) return cfg.m0;
  return cfg.m0 + cfg.perturb_amp * std::cos(cfg.perturb_nu1 * xi1) * std::cos(cfg.perturb_nu2 * xi2);
}

ScenarioState build(const ScenarioConfig& cfg) {
  cfg.validate();
  const GridSpec& g = cfg.grid;
  const double h1 = g.h1();
  const double h2 = g.h2();

  NodeArray<Vec3> xnode(g);
  for (int J = 0; J <= g.n2; ++J) {
    for (int I = 0; I <= g.n1; ++I) xnode(I, J) = initial_position(cfg, g.xi1_node(I), g.xi2_node(J));
  }
  // Periodic directions: make the seam nodes agree exactly up to the period
  // offset of the flat graph coordinates.
  if (g.bc_xi2 == BoundaryKind::Periodic && !is_graph(cfg.kind)) {
    for (int I = 0; I <= g.n1; ++I) xnode(I, g.n2) = xnode(I, 0);
  }

  NodeArray<Vec3> eu(g);
  NodeArray<Vec3> ev(g);
  for (int J = 0; J <= g.n2; ++J) {
    for (int i = 0; i < g.n1; ++i) eu(i, J) = (xnode(i + 1, J) - xnode(i, J)) / h1;
  }
  for (int j = 0; j < g.n2; ++j) {
    for (int I = 0; I <= g.n1; ++I) ev(I, j) = (xnode(I, j + 1) - xnode(I, j)) / h2;
  }

  ScenarioState s;
  s.ct = init_potentials(eu, ev, g);
  // Gauge: anchor the potentials on the actual front so A equals X at nodes.
  for (Vec3& a : s.ct.potential.raw()) a += xnode(0, 0);
  collocate_edges(s.ct);

  s.field = Field(g);
  center_interp(s.ct, s.field);
  for (int j = 0; j < g.n2; ++j) {
    for (int i = 0; i < g.n1; ++i) {
      ConservedState& w = s.field.w(i, j);
      const double mach = initial_mach(cfg, g.xi1_center(i), g.xi2_center(j));
      const PrimitiveState p = make_primitive(w.gu(), w.gv(), mach, cfg.v0);
      w = conserved_from_primitives(p, cfg.model);
    }
  }
  fill_ghosts(s.field);

  s.mesh = FrontMesh(g.n1, g.n2);
  for (int j = 0; j < g.n2; ++j) {
    for (int i = 0; i < g.n1; ++i) s.mesh.at(i, j) = initial_position(cfg, g.xi1_center(i), g.xi2_center(j));
  }
  return s;
}

PlanarSolution analytic_planar_solution(double m0, double v0, double t) {
  PlanarSolution s;
  if (v0 <= 0.0) {
    s.mach = m0;
    s.calV = 0.0;
    s.displacement = m0 * t;
    return s;
  }
  const double q = 1.0 + 2.0 * v0 * t;
  s.calV = v0 / q;
  s.mach = 1.0 + (m0 - 1.0) / std::sqrt(q);
  s.displacement = t + (m0 - 1.0) / v0 * (std::sqrt(q) - 1.0);
  return s;
}

}  // namespace kcl
