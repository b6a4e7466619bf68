#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "kcl/constrained_transport.hpp"
#include "kcl/fv_scheme.hpp"
#include "kcl/ray_tracker.hpp"

namespace kcl {

enum class ScenarioKind { Dip, PeriodicPulse, CosExp, Cylinder, Sphere, ComparisonDip, Planar };

std::string_view to_string(ScenarioKind kind);
ScenarioKind scenario_from_string(std::string_view text);
const std::vector<ScenarioKind>& all_scenarios();

struct ScenarioConfig {
  ScenarioKind kind = ScenarioKind::Planar;
  ModelKind model = ModelKind::Srt;
  GridSpec grid;

  // Shape parameters; each scenario reads the ones its formula needs.
  double kappa = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
  double a = 0.0;
  double b = 0.0;
  double radius = 2.0;  // cylinder and sphere

  // M0 = m0 + perturb_amp cos(nu1 xi1) cos(nu2 xi2); the cylinder uses nu1 = 0.
  double m0 = 1.2;
  double perturb_amp = 0.0;
  double perturb_nu1 = 0.0;
  double perturb_nu2 = 0.0;

  double v0 = 0.2;

  void validate() const;
};

/// Reference setup for a scenario, including its lattice and boundary tags.
ScenarioConfig default_scenario(ScenarioKind kind);

struct ScenarioState {
  Field field;
  CtState ct;
  FrontMesh mesh;
};

ScenarioState build(const ScenarioConfig& cfg);

/// Analytic front position X(xi1, xi2) at t = 0.
Vec3 initial_position(const ScenarioConfig& cfg, double xi1, double xi2);
/// Analytic tangents (X_xi1, X_xi2) at t = 0.
std::pair<Vec3, Vec3> initial_tangents(const ScenarioConfig& cfg, double xi1, double xi2);
double initial_mach(const ScenarioConfig& cfg, double xi1, double xi2);

struct PlanarSolution {
  double mach = 1.0;
  double calV = 0.0;
  double displacement = 0.0;
};

/// Closed-form planar decay with zero mean curvature.
PlanarSolution analytic_planar_solution(double m0, double v0, double t);

}  // namespace kcl
