#include "kcl/runner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "kcl/error.hpp"
#include "kcl/snapshot_io.hpp"

#ifndef KCL_VERSION
#define KCL_VERSION "0.0.0"
#endif

namespace kcl {

namespace fs = std::filesystem;
namespace pt = boost::property_tree;

namespace {

// Shortest %g form that reads back to the same double.
std::string num(double v) {
  char buf[40];
  for (int prec = 15; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

const std::set<std::string> kScenarioKeys = {
    "kind",   "model",  "n1",     "n2",     "xi1_min", "xi1_max",     "xi2_min",     "xi2_max",
    "bc_xi1", "bc_xi2", "kappa",  "alpha",  "beta",    "a",           "b",           "radius",
    "m0",     "v0",     "perturb_amp", "perturb_nu1", "perturb_nu2"};
const std::set<std::string> kSchemeKeys = {"cfl_nu",     "limiter",         "cweno_eps", "cweno_power",
                                           "newton_tol", "newton_max_iter"};
const std::set<std::string> kRunKeys = {"t_end", "snapshot_every", "output_dir", "ct_enabled",
                                        "kink_threshold_deg"};

class Section {
 public:
  Section(const pt::ptree* tree, std::string name) : tree_(tree), name_(std::move(name)) {}

  template <typename T>
  void read(const char* key, T& target) const {
    if (tree_ == nullptr) return;
    auto v = tree_->get_optional<std::string>(key);
    if (!v) return;
    try {
      target = tree_->get<T>(key);
    } catch (const pt::ptree_error&) {
      throw SolverError(ErrorKind::BadConfig, "[" + name_ + "] " + key + ": cannot parse '" + *v + "'");
    }
  }

  std::optional<std::string> text(const char* key) const {
    if (tree_ == nullptr) return std::nullopt;
    auto v = tree_->get_optional<std::string>(key);
    if (!v) return std::nullopt;
    return *v;
  }

 private:
  const pt::ptree* tree_;
  std::string name_;
};

bool parse_bool(const std::string& s) {
  if (s == "true" || s == "1" || s == "yes" || s == "on") return true;
  if (s == "false" || s == "0" || s == "no" || s == "off") return false;
  throw SolverError(ErrorKind::BadConfig, "not a boolean: '" + s + "'");
}

}  // namespace

void RunConfig::validate() const {
  scenario.validate();
  scheme.validate();
  if (!(std::isfinite(t_end) && t_end > 0.0)) throw SolverError(ErrorKind::BadParameter, "t_end must be positive");
  if (!(std::isfinite(snapshot_every) && snapshot_every > 0.0)) {
    throw SolverError(ErrorKind::BadParameter, "snapshot_every must be positive");
  }
  if (!(kink_threshold_deg > 0.0 && kink_threshold_deg < 90.0)) {
    throw SolverError(ErrorKind::BadParameter, "kink_threshold_deg must lie in (0, 90)");
  }
  if (output_dir.empty()) throw SolverError(ErrorKind::BadParameter, "output_dir is empty");
}

RunConfig parse_run_config(std::istream& in) {
  pt::ptree tree;
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw SolverError(ErrorKind::BadConfig, std::string("config: ") + e.what());
  }
  const pt::ptree* sc = nullptr;
  const pt::ptree* sh = nullptr;
  const pt::ptree* rn = nullptr;
  for (const auto& [name, sub] : tree) {
    const std::set<std::string>* keys = nullptr;
    if (name == "scenario") {
      sc = &sub;
      keys = &kScenarioKeys;
    } else if (name == "scheme") {
      sh = &sub;
      keys = &kSchemeKeys;
    } else if (name == "run") {
      rn = &sub;
      keys = &kRunKeys;
    } else {
      throw SolverError(ErrorKind::BadConfig, "unknown config section or top-level key '" + name + "'");
    }
    for (const auto& kv : sub) {
      if (!keys->count(kv.first)) {
        throw SolverError(ErrorKind::BadConfig, "unknown key '" + kv.first + "' in [" + name + "]");
      }
    }
  }

  RunConfig cfg;
  const Section s(sc, "scenario");
  if (auto kind = s.text("kind")) cfg.scenario = default_scenario(scenario_from_string(*kind));
  ScenarioConfig& c = cfg.scenario;
  if (auto m = s.text("model")) c.model = model_from_string(*m);
  s.read("n1", c.grid.n1);
  s.read("n2", c.grid.n2);
  s.read("xi1_min", c.grid.xi1_min);
  s.read("xi1_max", c.grid.xi1_max);
  s.read("xi2_min", c.grid.xi2_min);
  s.read("xi2_max", c.grid.xi2_max);
  if (auto b = s.text("bc_xi1")) c.grid.bc_xi1 = boundary_from_string(*b);
  if (auto b = s.text("bc_xi2")) c.grid.bc_xi2 = boundary_from_string(*b);
  s.read("kappa", c.kappa);
  s.read("alpha", c.alpha);
  s.read("beta", c.beta);
  s.read("a", c.a);
  s.read("b", c.b);
  s.read("radius", c.radius);
  s.read("m0", c.m0);
  s.read("v0", c.v0);
  s.read("perturb_amp", c.perturb_amp);
  s.read("perturb_nu1", c.perturb_nu1);
  s.read("perturb_nu2", c.perturb_nu2);

  const Section h(sh, "scheme");
  h.read("cfl_nu", cfg.scheme.cfl_nu);
  if (auto l = h.text("limiter")) cfg.scheme.limiter = limiter_from_string(*l);
  h.read("cweno_eps", cfg.scheme.cweno_eps);
  h.read("cweno_power", cfg.scheme.cweno_power);
  h.read("newton_tol", cfg.scheme.newton.residual_tol);
  h.read("newton_max_iter", cfg.scheme.newton.max_iter);

  const Section r(rn, "run");
  r.read("t_end", cfg.t_end);
  r.read("snapshot_every", cfg.snapshot_every);
  if (auto d = r.text("output_dir")) cfg.output_dir = *d;
  if (auto b = r.text("ct_enabled")) cfg.ct_enabled = parse_bool(*b);
  r.read("kink_threshold_deg", cfg.kink_threshold_deg);
  return cfg;
}

RunConfig load_run_config(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw SolverError(ErrorKind::Io, "cannot open config " + path.string());
  return parse_run_config(in);
}

void write_run_config(std::ostream& out, const RunConfig& cfg) {
  const ScenarioConfig& c = cfg.scenario;
  const GridSpec& g = c.grid;
  out << "[scenario]\n"
      << "kind = " << to_string(c.kind) << "\n"
      << "model = " << to_string(c.model) << "\n"
      << "n1 = " << g.n1 << "\n"
      << "n2 = " << g.n2 << "\n"
      << "xi1_min = " << num(g.xi1_min) << "\n"
      << "xi1_max = " << num(g.xi1_max) << "\n"
      << "xi2_min = " << num(g.xi2_min) << "\n"
      << "xi2_max = " << num(g.xi2_max) << "\n"
      << "bc_xi1 = " << to_string(g.bc_xi1) << "\n"
      << "bc_xi2 = " << to_string(g.bc_xi2) << "\n"
      << "kappa = " << num(c.kappa) << "\n"
      << "alpha = " << num(c.alpha) << "\n"
      << "beta = " << num(c.beta) << "\n"
      << "a = " << num(c.a) << "\n"
      << "b = " << num(c.b) << "\n"
      << "radius = " << num(c.radius) << "\n"
      << "m0 = " << num(c.m0) << "\n"
      << "v0 = " << num(c.v0) << "\n"
      << "perturb_amp = " << num(c.perturb_amp) << "\n"
      << "perturb_nu1 = " << num(c.perturb_nu1) << "\n"
      << "perturb_nu2 = " << num(c.perturb_nu2) << "\n"
      << "\n[scheme]\n"
      << "cfl_nu = " << num(cfg.scheme.cfl_nu) << "\n"
      << "limiter = " << to_string(cfg.scheme.limiter) << "\n"
      << "cweno_eps = " << num(cfg.scheme.cweno_eps) << "\n"
      << "cweno_power = " << num(cfg.scheme.cweno_power) << "\n"
      << "newton_tol = " << num(cfg.scheme.newton.residual_tol) << "\n"
      << "newton_max_iter = " << cfg.scheme.newton.max_iter << "\n"
      << "\n[run]\n"
      << "t_end = " << num(cfg.t_end) << "\n"
      << "snapshot_every = " << num(cfg.snapshot_every) << "\n"
      << "output_dir = " << cfg.output_dir.string() << "\n"
      << "ct_enabled = " << (cfg.ct_enabled ? "true" : "false") << "\n"
      << "kink_threshold_deg = " << num(cfg.kink_threshold_deg) << "\n";
}

Simulation::Simulation(const RunConfig& cfg) : cfg_(cfg) {
  cfg_.validate();
  state_ = build(cfg_.scenario);
}

namespace {

// Failures a smaller step can cure: the KT dissipation only preserves
// positivity for small enough dt once the two directions add up.
bool step_size_failure(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NonPositiveEnergy:
    case ErrorKind::SonicState:
    case ErrorKind::DegenerateTangents:
    case ErrorKind::NonFiniteState:
    case ErrorKind::ImaginarySpeed:
      return true;
    default:
      return false;
  }
}

}  // namespace

ScenarioState Simulation::trial_step(double dt) const {
  const ModelKind model = cfg_.scenario.model;
  ScenarioState next = state_;
  const StageVelocities stages = rk2_step(next.field, cfg_.ct_enabled ? &next.ct : nullptr, dt, model, cfg_.scheme);
  advance_front(next.mesh, stages, dt);

  const GridSpec& g = next.field.grid;
  for (int j = 0; j < g.n2; ++j) {
    for (int i = 0; i < g.n1; ++i) {
      const ConservedState& w = next.field.w(i, j);
      const Vec3& x = next.mesh.at(i, j);
      bool ok = std::isfinite(x.x) && std::isfinite(x.y) && std::isfinite(x.z);
      for (int k = 0; k < kMaxVars; ++k) ok = ok && std::isfinite(w[k]);
      if (!ok) {
        throw SolverError(ErrorKind::NonFiniteState, "non-finite value in cell (" + std::to_string(i) + ", " +
                                                         std::to_string(j) + ")");
      }
      // The next stage recovers primitives everywhere; fail here instead.
      (void)recover_primitives(w, model, cfg_.scheme.newton);
    }
  }
  return next;
}

double Simulation::step(double dt_max) {
  if (!(dt_max > 0.0)) throw SolverError(ErrorKind::BadParameter, "step needs a positive dt_max");
  double dt = dt_max;
  try {
    dt = std::min(dt_max, cfl_dt(state_.field, cfg_.scenario.model, cfg_.scheme));
  } catch (const SolverError& e) {
    if (e.kind() != ErrorKind::ZeroSpeed) throw;
  }

  // A failed attempt leaves the last good state untouched.
  for (int attempt = 0;; ++attempt) {
    try {
      state_ = trial_step(dt);
      break;
    } catch (const SolverError& e) {
      if (!step_size_failure(e.kind()) || attempt >= kMaxStepHalvings) throw;
      dt *= 0.5;
      ++rejected_;
    }
  }
  ++steps_;
  return dt;
}

double Simulation::step_to(double t_target) {
  const double remaining = t_target - time();
  const double dt = step(remaining);
  if (dt >= remaining || t_target - time() <= 1e-13 * std::max(1.0, std::abs(t_target))) {
    state_.field.t = t_target;
    state_.mesh.t = t_target;
  }
  return dt;
}

void Simulation::advance_to(double t_target) {
  while (time() < t_target) step_to(t_target);
}

DiagnosticsRecord Simulation::diagnostics() const {
  return kcl::diagnostics(state_.field, state_.mesh, cfg_.ct_enabled ? &state_.ct : nullptr, cfg_.scenario.model,
                          cfg_.kink_threshold_deg, cfg_.scheme.newton);
}

std::string format_diagnostics_row(const DiagnosticsRecord& d) {
  std::ostringstream os;
  os << num(d.t) << ',' << num(d.m_max) << ',' << num(d.m_min) << ',' << num(d.v_max) << ',' << num(d.v_min)
     << ',' << num(d.height) << ',' << num(d.div_max[0]) << ',' << num(d.div_max[1]) << ','
     << num(d.div_max[2]) << ',' << d.kink_count;
  return os.str();
}

std::string version_string() { return KCL_VERSION; }

RunSummary run(const RunConfig& cfg, std::ostream* log) {
  RunSummary summary;
  auto say = [&](const std::string& msg) {
    if (log != nullptr) *log << msg << '\n';
  };

  std::error_code ec;
  fs::create_directories(cfg.output_dir / "snapshots", ec);
  if (ec) {
    summary.exit_code = 1;
    summary.message = "cannot create " + cfg.output_dir.string() + ": " + ec.message();
    return summary;
  }
  {
    std::ofstream manifest(cfg.output_dir / "run_manifest.txt");
    manifest << "# kclfront " << version_string() << "\n";
    write_run_config(manifest, cfg);
    if (!manifest) {
      summary.exit_code = 1;
      summary.message = "cannot write run manifest";
      return summary;
    }
  }

  std::ofstream diag(cfg.output_dir / "diagnostics.csv");
  std::ofstream index(cfg.output_dir / "snapshots" / "index.csv");
  if (!diag || !index) {
    summary.exit_code = 1;
    summary.message = "cannot open output tables";
    return summary;
  }
  diag << kDiagnosticsHeader << '\n';
  index << "snapshot,t,step\n";

  std::optional<Simulation> sim;
  try {
    sim.emplace(cfg);
  } catch (const SolverError& e) {
    summary.exit_code = 1;
    summary.message = e.what();
    return summary;
  }

  int snap_no = 0;
  auto record = [&]() {
    DiagnosticsRecord d = sim->diagnostics();
    diag << format_diagnostics_row(d) << '\n';
    summary.diagnostics.push_back(d);
  };
  auto snapshot = [&](const std::string& name) {
    write_snapshot(cfg.output_dir / "snapshots" / name, sim->field(), sim->ct(), sim->mesh(), cfg.scenario.model,
                   sim->steps(), cfg.scheme.newton);
    index << name << ',' << num(sim->time()) << ',' << sim->steps() << '\n';
  };
  auto snap_name = [](int k) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "snap_%05d", k);
    return std::string(buf);
  };

  try {
    record();
    snapshot(snap_name(snap_no++));
    for (long k = 1; sim->time() < cfg.t_end; ++k) {
      double target = static_cast<double>(k) * cfg.snapshot_every;
      if (target > cfg.t_end || cfg.t_end - target <= 1e-12 * cfg.t_end) target = cfg.t_end;
      while (sim->time() < target) {
        sim->step_to(target);
        record();
      }
      snapshot(snap_name(snap_no++));
      say("t = " + num(sim->time()) + "  steps = " + std::to_string(sim->steps()) +
          "  rejected = " + std::to_string(sim->rejected_steps()));
    }
  } catch (const SolverError& e) {
    summary.exit_code = 2;
    summary.message = "at t = " + num(sim->time()) + ": " + e.what();
    try {
      snapshot("last_good");
    } catch (const SolverError& e2) {
      summary.message += std::string("; last good snapshot not written: ") + e2.what();
    }
  }
  summary.steps = sim->steps();
  summary.t_final = sim->time();
  if (summary.exit_code == 0) summary.message = "reached t_end";
  say(summary.message);
  return summary;
}

}  // namespace kcl
