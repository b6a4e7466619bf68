#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "kcl/error.hpp"
#include "kcl/scenarios.hpp"

using namespace kcl;

namespace {

constexpr double kPi = std::numbers::pi;

bool is_graph(ScenarioKind k) { return k != ScenarioKind::Cylinder && k != ScenarioKind::Sphere; }

}  // namespace

TEST(ScenarioNames, RoundTrip) {
  for (ScenarioKind k : all_scenarios()) EXPECT_EQ(scenario_from_string(to_string(k)), k);
  EXPECT_EQ(all_scenarios().size(), 7u);
  EXPECT_THROW(scenario_from_string("torus"), SolverError);
}

TEST(ScenarioDefaults, ShapeParameters) {
  const ScenarioConfig dip = default_scenario(ScenarioKind::Dip);
  EXPECT_EQ(dip.kappa, 0.5);
  EXPECT_EQ(dip.alpha, 1.5);
  EXPECT_EQ(dip.beta, 3.0);
  const ScenarioConfig cmp = default_scenario(ScenarioKind::ComparisonDip);
  EXPECT_EQ(cmp.kappa, 0.5);
  EXPECT_EQ(cmp.alpha, 1.5);
  EXPECT_EQ(cmp.beta, 1.5);
  const ScenarioConfig pulse = default_scenario(ScenarioKind::PeriodicPulse);
  EXPECT_EQ(pulse.kappa, 0.1);
  EXPECT_EQ(pulse.a, 2.0);
  EXPECT_EQ(pulse.b, 2.0);
  EXPECT_EQ(pulse.grid.bc_xi1, BoundaryKind::Periodic);
  EXPECT_EQ(pulse.grid.bc_xi2, BoundaryKind::Periodic);
  const ScenarioConfig ce = default_scenario(ScenarioKind::CosExp);
  EXPECT_EQ(ce.kappa, 0.05);
  EXPECT_EQ(ce.alpha, 1.0);
  EXPECT_EQ(ce.beta, 0.15);
  const ScenarioConfig cyl = default_scenario(ScenarioKind::Cylinder);
  EXPECT_EQ(cyl.radius, 2.0);
  EXPECT_EQ(cyl.perturb_amp, 0.05);
  EXPECT_EQ(cyl.perturb_nu2, 8.0);
  EXPECT_GE(cyl.grid.n1, 64);
  EXPECT_GE(cyl.grid.n2, 256);
  EXPECT_EQ(cyl.grid.bc_xi2, BoundaryKind::Periodic);
  const ScenarioConfig sph = default_scenario(ScenarioKind::Sphere);
  EXPECT_DOUBLE_EQ(sph.grid.xi1_min, kPi / 15);
  EXPECT_DOUBLE_EQ(sph.grid.xi1_max, 14 * kPi / 15);
  EXPECT_EQ(sph.perturb_nu1, 4.0);
  EXPECT_EQ(sph.perturb_nu2, 8.0);
  for (ScenarioKind k : all_scenarios()) {
    const ScenarioConfig c = default_scenario(k);
    EXPECT_EQ(c.m0, 1.2);
    EXPECT_EQ(c.v0, 0.2);
    EXPECT_NO_THROW(c.validate());
  }
}

TEST(ScenarioDefaults, InvalidParametersRejected) {
  ScenarioConfig c = default_scenario(ScenarioKind::Dip);
  c.alpha = 0.0;
  EXPECT_THROW(c.validate(), SolverError);
  c = default_scenario(ScenarioKind::Sphere);
  c.grid.xi1_min = 0.0;
  EXPECT_THROW(c.validate(), SolverError);
  c = default_scenario(ScenarioKind::Planar);
  c.m0 = 1.0;
  EXPECT_THROW(c.validate(), SolverError);
}

TEST(ScenarioShapes, GraphFormulas) {
  const ScenarioConfig dip = default_scenario(ScenarioKind::Dip);
  EXPECT_DOUBLE_EQ(initial_position(dip, 0, 0).z, -0.5);
  EXPECT_DOUBLE_EQ(initial_position(dip, 1.5, 0).z, -0.25);
  const ScenarioConfig pulse = default_scenario(ScenarioKind::PeriodicPulse);
  EXPECT_NEAR(initial_position(pulse, 2, 2).z, 0.4, 1e-15);
  EXPECT_NEAR(initial_position(pulse, 0, 0).z, 0.0, 1e-15);
  const ScenarioConfig ce = default_scenario(ScenarioKind::CosExp);
  EXPECT_DOUBLE_EQ(initial_position(ce, 0, 0).z, 0.05);
  const Vec3 x = initial_position(ce, 3, 4);
  EXPECT_EQ(x.x, 3.0);
  EXPECT_EQ(x.y, 4.0);
  EXPECT_NEAR(x.z, 0.05 * std::cos(5.0) * std::exp(-0.75), 1e-15);
}

TEST(ScenarioShapes, TangentsMatchFiniteDifferences) {
  for (ScenarioKind k : all_scenarios()) {
    const ScenarioConfig c = default_scenario(k);
    const double u = c.grid.xi1_min + 0.37 * (c.grid.xi1_max - c.grid.xi1_min);
    const double v = c.grid.xi2_min + 0.61 * (c.grid.xi2_max - c.grid.xi2_min);
    const double e = 1e-6;
    const auto [xu, xv] = initial_tangents(c, u, v);
    const Vec3 du = (initial_position(c, u + e, v) - initial_position(c, u - e, v)) / (2 * e);
    const Vec3 dv = (initial_position(c, u, v + e) - initial_position(c, u, v - e)) / (2 * e);
    EXPECT_LE(norm(du - xu), 1e-8) << to_string(k);
    EXPECT_LE(norm(dv - xv), 1e-8) << to_string(k);
  }
}

TEST(ScenarioShapes, Orientation) {
  for (ScenarioKind k : all_scenarios()) {
    const ScenarioConfig c = default_scenario(k);
    const ScenarioState s = build(c);
    for (int j = 0; j < c.grid.n2; ++j) {
      for (int i = 0; i < c.grid.n1; ++i) {
        const PrimitiveState p = recover_primitives(s.field.w(i, j), c.model);
        if (is_graph(k)) {
          ASSERT_GT(p.N.z, 0.0) << to_string(k);
        } else {
          ASSERT_LT(dot(p.N, s.mesh.at(i, j)), 0.0) << to_string(k);
        }
      }
    }
  }
}

TEST(ScenarioShapes, CylinderNormalPointsInward) {
  const ScenarioConfig c = default_scenario(ScenarioKind::Cylinder);
  const auto [xu, xv] = initial_tangents(c, 0.3, 0.0);
  const PrimitiveState p = make_primitive(xu, xv, 1.2, 0.2);
  EXPECT_NEAR(p.N.x, -1.0, 1e-15);
  EXPECT_NEAR(p.N.y, 0.0, 1e-15);
  EXPECT_NEAR(p.N.z, 0.0, 1e-15);
}

TEST(ScenarioShapes, PlanarFrame) {
  ScenarioConfig c = default_scenario(ScenarioKind::Planar);
  c.grid.n1 = 12;
  c.grid.n2 = 20;
  const ScenarioState s = build(c);
  for (int j = 0; j < 20; ++j) {
    for (int i = 0; i < 12; ++i) {
      const PrimitiveState p = recover_primitives(s.field.w(i, j), c.model);
      EXPECT_NEAR(norm(p.N - Vec3{0, 0, 1}), 0.0, 1e-15);
      EXPECT_NEAR(p.G1, 1.0, 1e-14);
      EXPECT_NEAR(p.G2, 1.0, 1e-14);
      EXPECT_NEAR(p.sin_psi, 1.0, 1e-14);
      EXPECT_NEAR(p.M, 1.2, 1e-12);
    }
  }
}

TEST(ScenarioMach, CylinderFormulaExtrema) {
  const ScenarioConfig c = default_scenario(ScenarioKind::Cylinder);
  EXPECT_DOUBLE_EQ(initial_mach(c, 0.0, 0.0), 1.25);
  EXPECT_DOUBLE_EQ(initial_mach(c, 0.0, kPi / 8), 1.15);
  const ScenarioConfig s = default_scenario(ScenarioKind::Sphere);
  EXPECT_DOUBLE_EQ(initial_mach(s, kPi / 2, 0.0), 1.25);
  EXPECT_DOUBLE_EQ(initial_mach(s, kPi / 2, kPi / 8), 1.15);
  EXPECT_DOUBLE_EQ(initial_mach(default_scenario(ScenarioKind::Dip), 0.3, 0.4), 1.2);
}

TEST(ScenarioBuild, PotentialsReproducePositions) {
  for (ScenarioKind k : all_scenarios()) {
    ScenarioConfig c = default_scenario(k);
    c.grid.n1 = std::min(c.grid.n1, 32);
    c.grid.n2 = std::min(c.grid.n2, 64);
    const ScenarioState s = build(c);
    double err = 0.0;
    for (int J = 0; J <= c.grid.n2; ++J) {
      for (int I = 0; I <= c.grid.n1; ++I) {
        const Vec3 x = initial_position(c, c.grid.xi1_node(I), c.grid.xi2_node(J));
        err = std::max(err, norm(s.ct.potential(I, J) - x));
      }
    }
    EXPECT_LE(err, 1e-10) << to_string(k);
    for (double d : divergence_field(s.ct).max_abs) EXPECT_LE(d, 1e-12) << to_string(k);
  }
}

TEST(PlanarSolution, ReferenceValues) {
  const PlanarSolution s = analytic_planar_solution(1.2, 0.2, 10.0);
  EXPECT_NEAR(s.mach, 1.0894427, 1e-7);
  EXPECT_NEAR(s.calV, 0.04, 1e-15);
  EXPECT_NEAR(s.displacement, 11.2360680, 1e-7);
  const PlanarSolution z = analytic_planar_solution(1.2, 0.0, 3.0);
  EXPECT_EQ(z.mach, 1.2);
  EXPECT_EQ(z.calV, 0.0);
  EXPECT_DOUBLE_EQ(z.displacement, 3.6);
  const PlanarSolution t0 = analytic_planar_solution(1.3, 0.1, 0.0);
  EXPECT_EQ(t0.mach, 1.3);
  EXPECT_EQ(t0.displacement, 0.0);
}
