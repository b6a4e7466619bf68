#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "kcl/error.hpp"
#include "kcl/runner.hpp"
#include "kcl/snapshot_io.hpp"

using namespace kcl;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("kcl_unit_" + name);
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

RunConfig parse(const std::string& text) {
  std::istringstream in(text);
  return parse_run_config(in);
}

RunConfig small_planar(const fs::path& out) {
  RunConfig cfg = parse("[scenario]\nkind = planar\nn1 = 8\nn2 = 8\n[run]\nt_end = 0.5\nsnapshot_every = 0.25\n");
  cfg.output_dir = out;
  return cfg;
}

ErrorKind parse_error(const std::string& text) {
  try {
    parse(text);
  } catch (const SolverError& e) {
    return e.kind();
  }
  return ErrorKind::Io;
}

}  // namespace

TEST(Config, KindSeedsScenarioDefaults) {
  const RunConfig cfg = parse("[scenario]\nkind = dip\nn1 = 32\n[run]\nt_end = 3\n");
  EXPECT_EQ(cfg.scenario.kind, ScenarioKind::Dip);
  EXPECT_EQ(cfg.scenario.alpha, 1.5);
  EXPECT_EQ(cfg.scenario.beta, 3.0);
  EXPECT_EQ(cfg.scenario.grid.n1, 32);
  EXPECT_EQ(cfg.scenario.grid.n2, 128);
  EXPECT_EQ(cfg.t_end, 3.0);
  EXPECT_TRUE(cfg.ct_enabled);
}

TEST(Config, SchemeAndRunKeys) {
  const RunConfig cfg = parse(
      "[scenario]\nkind = periodic_pulse\nmodel = wnlrt\n"
      "[scheme]\ncfl_nu = 0.3\nlimiter = minmod\n"
      "[run]\nct_enabled = false\nkink_threshold_deg = 6\noutput_dir = somewhere\n");
  EXPECT_EQ(cfg.scenario.model, ModelKind::Wnlrt);
  EXPECT_EQ(cfg.scheme.cfl_nu, 0.3);
  EXPECT_EQ(cfg.scheme.limiter, Limiter::Minmod);
  EXPECT_FALSE(cfg.ct_enabled);
  EXPECT_EQ(cfg.kink_threshold_deg, 6.0);
  EXPECT_EQ(cfg.output_dir, fs::path("somewhere"));
}

TEST(Config, UnknownKeysAndSectionsRejected) {
  EXPECT_EQ(parse_error("[scenario]\nkind = dip\nkapa = 1\n"), ErrorKind::BadConfig);
  EXPECT_EQ(parse_error("[solver]\ncfl_nu = 0.3\n"), ErrorKind::BadConfig);
  EXPECT_EQ(parse_error("[run]\nt_end = soon\n"), ErrorKind::BadConfig);
  EXPECT_EQ(parse_error("[run]\nct_enabled = maybe\n"), ErrorKind::BadConfig);
  EXPECT_EQ(parse_error("[scenario]\nkind = torus\n"), ErrorKind::BadConfig);
}

TEST(Config, InvalidValuesFailValidation) {
  RunConfig cfg = parse("[run]\nkink_threshold_deg = 95\n");
  EXPECT_THROW(cfg.validate(), SolverError);
  cfg = parse("[scheme]\ncfl_nu = 1.5\n");
  EXPECT_THROW(cfg.validate(), SolverError);
  cfg = parse("[run]\nt_end = -1\n");
  EXPECT_THROW(cfg.validate(), SolverError);
}

TEST(Config, WriteParseRoundTrip) {
  RunConfig a = parse("[scenario]\nkind = sphere\nm0 = 1.3\n[scheme]\ncweno_eps = 1e-7\n[run]\nt_end = 0.7\n");
  std::ostringstream os;
  write_run_config(os, a);
  const RunConfig b = parse(os.str());
  std::ostringstream os2;
  write_run_config(os2, b);
  EXPECT_EQ(os.str(), os2.str());
  EXPECT_EQ(b.scenario.kind, ScenarioKind::Sphere);
  EXPECT_EQ(b.scenario.m0, 1.3);
  EXPECT_EQ(b.scenario.grid.xi1_min, a.scenario.grid.xi1_min);
  EXPECT_EQ(b.scheme.cweno_eps, 1e-7);
}

TEST(Simulation, StepToLandsExactly) {
  Simulation sim(small_planar(scratch("stepto")));
  sim.advance_to(0.3);
  EXPECT_EQ(sim.time(), 0.3);
  EXPECT_EQ(sim.mesh().t, sim.time());
  EXPECT_GT(sim.steps(), 0);
  EXPECT_EQ(sim.rejected_steps(), 0);
}

TEST(Run, WritesManifestDiagnosticsAndSnapshots) {
  const fs::path out = scratch("outputs");
  const RunConfig cfg = small_planar(out);
  const RunSummary s = run(cfg);
  ASSERT_EQ(s.exit_code, 0) << s.message;
  EXPECT_EQ(s.t_final, 0.5);
  const std::string manifest = slurp(out / "run_manifest.txt");
  EXPECT_EQ(manifest.rfind("# kclfront " + version_string(), 0), 0u);
  EXPECT_EQ(parse(manifest).t_end, 0.5);
  const std::string diag = slurp(out / "diagnostics.csv");
  EXPECT_EQ(diag.substr(0, diag.find('\n')), kDiagnosticsHeader);
  EXPECT_EQ(s.diagnostics.size(), static_cast<std::size_t>(s.steps + 1));
  for (const char* name : {"snap_00000", "snap_00001", "snap_00002"}) {
    EXPECT_TRUE(fs::exists(out / "snapshots" / name / "header.txt")) << name;
    EXPECT_TRUE(fs::exists(out / "snapshots" / name / "cells.csv")) << name;
    EXPECT_TRUE(fs::exists(out / "snapshots" / name / "nodes.csv")) << name;
  }
  EXPECT_FALSE(fs::exists(out / "snapshots" / "snap_00003"));
  const std::string index = slurp(out / "snapshots" / "index.csv");
  EXPECT_NE(index.find("snap_00001,0.25,"), std::string::npos);
}

TEST(Run, DeterministicOutput) {
  const fs::path a = scratch("det_a");
  const fs::path b = scratch("det_b");
  RunConfig cfg = parse("[scenario]\nkind = dip\nn1 = 16\nn2 = 16\n[run]\nt_end = 0.5\nsnapshot_every = 0.5\n");
  cfg.output_dir = a;
  ASSERT_EQ(run(cfg).exit_code, 0);
  cfg.output_dir = b;
  ASSERT_EQ(run(cfg).exit_code, 0);
  EXPECT_EQ(slurp(a / "diagnostics.csv"), slurp(b / "diagnostics.csv"));
  EXPECT_EQ(slurp(a / "snapshots/snap_00001/cells.csv"), slurp(b / "snapshots/snap_00001/cells.csv"));
}

TEST(Run, SnapshotReloadIsBitExact) {
  const fs::path out = scratch("reload");
  RunConfig cfg = parse("[scenario]\nkind = cylinder\nn1 = 8\nn2 = 32\n[run]\nt_end = 0.1\nsnapshot_every = 0.1\n");
  cfg.output_dir = out;
  Simulation sim(cfg);
  sim.advance_to(0.1);
  write_snapshot(out / "snap", sim.field(), sim.ct(), sim.mesh(), cfg.scenario.model, sim.steps());
  const Snapshot snap = read_snapshot(out / "snap");
  EXPECT_EQ(snap.step, sim.steps());
  EXPECT_EQ(snap.model, ModelKind::Srt);
  EXPECT_EQ(snap.field.t, sim.time());
  EXPECT_EQ(snap.field.grid.bc_xi2, BoundaryKind::Periodic);
  for (int j = 0; j < 32; ++j)
    for (int i = 0; i < 8; ++i) ASSERT_EQ(snap.field.w(i, j), sim.field().w(i, j));
  EXPECT_EQ(snap.ct.potential.raw(), sim.ct().potential.raw());
  EXPECT_EQ(snap.mesh.x, sim.mesh().x);
}

TEST(Run, UnwritableDirectoryGivesExitOne) {
  const fs::path blocker = scratch("blocker");
  { std::ofstream f(blocker); f << "x"; }
  RunConfig cfg = small_planar(blocker / "sub");
  const RunSummary s = run(cfg);
  EXPECT_EQ(s.exit_code, 1);
  fs::remove(blocker);
}

TEST(Run, MissingSnapshotThrowsIo) {
  try {
    read_snapshot(scratch("absent"));
    FAIL() << "expected Io";
  } catch (const SolverError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Io);
  }
}
