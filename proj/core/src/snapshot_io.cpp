#include "kcl/snapshot_io.hpp"

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "kcl/error.hpp"

namespace kcl {

namespace fs = std::filesystem;

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::ofstream open_out(const fs::path& p) {
  std::ofstream out(p);
  if (!out) throw SolverError(ErrorKind::Io, "cannot write " + p.string());
  return out;
}

std::ifstream open_in(const fs::path& p) {
  std::ifstream in(p);
  if (!in) throw SolverError(ErrorKind::Io, "cannot read " + p.string());
  return in;
}

std::vector<double> split_row(const std::string& line, std::size_t expected, const fs::path& file, long lineno) {
  std::vector<double> v;
  v.reserve(expected);
  std::size_t start = 0;
  while (start <= line.size()) {
    const std::size_t comma = line.find(',', start);
    const std::string cell = line.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    try {
      std::size_t used = 0;
      v.push_back(std::stod(cell, &used));
      if (used != cell.size()) throw std::invalid_argument(cell);
    } catch (const std::exception&) {
      throw SolverError(ErrorKind::Io, file.string() + ":" + std::to_string(lineno) + ": bad number '" + cell + "'");
    }
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (v.size() != expected) {
    throw SolverError(ErrorKind::Io, file.string() + ":" + std::to_string(lineno) + ": expected " +
                                         std::to_string(expected) + " columns");
  }
  return v;
}

}  // namespace

void write_snapshot(const fs::path& dir, const Field& field, const CtState& ct, const FrontMesh& mesh,
                    ModelKind model, long step, const MachSolverOptions& newton) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw SolverError(ErrorKind::Io, "cannot create " + dir.string() + ": " + ec.message());
  const GridSpec& g = field.grid;
  {
    auto out = open_out(dir / "header.txt");
    out << "format = kcl-snapshot-1\n"
        << "model = " << to_string(model) << "\n"
        << "step = " << step << "\n"
        << "t = " << num(field.t) << "\n"
        << "n1 = " << g.n1 << "\n"
        << "n2 = " << g.n2 << "\n"
        << "xi1_min = " << num(g.xi1_min) << "\n"
        << "xi1_max = " << num(g.xi1_max) << "\n"
        << "xi2_min = " << num(g.xi2_min) << "\n"
        << "xi2_max = " << num(g.xi2_max) << "\n"
        << "bc_xi1 = " << to_string(g.bc_xi1) << "\n"
        << "bc_xi2 = " << to_string(g.bc_xi2) << "\n"
        << "ghost = " << g.ghost << "\n";
  }
  {
    auto out = open_out(dir / "cells.csv");
    out << "i,j,xi1,xi2,w1,w2,w3,w4,w5,w6,w7,w8,x1,x2,x3,M,calV\n";
    for (int j = 0; j < g.n2; ++j) {
      for (int i = 0; i < g.n1; ++i) {
        const ConservedState& w = field.w(i, j);
        const PrimitiveState p = recover_primitives(w, model, newton);
        const Vec3& x = mesh.at(i, j);
        out << i << ',' << j << ',' << num(g.xi1_center(i)) << ',' << num(g.xi2_center(j));
        for (int k = 0; k < kMaxVars; ++k) out << ',' << num(w[k]);
        out << ',' << num(x.x) << ',' << num(x.y) << ',' << num(x.z) << ',' << num(p.M) << ',' << num(p.calV)
            << '\n';
      }
    }
  }
  {
    auto out = open_out(dir / "nodes.csv");
    out << "I,J,A1,A2,A3\n";
    for (int J = 0; J <= g.n2; ++J) {
      for (int I = 0; I <= g.n1; ++I) {
        const Vec3& a = ct.potential(I, J);
        out << I << ',' << J << ',' << num(a.x) << ',' << num(a.y) << ',' << num(a.z) << '\n';
      }
    }
  }
}

Snapshot read_snapshot(const fs::path& dir) {
  std::map<std::string, std::string> header;
  {
    const fs::path file = dir / "header.txt";
    auto in = open_in(file);
    std::string line;
    long lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (line.empty()) continue;
      const auto eq = line.find('=');
      if (eq == std::string::npos) {
        throw SolverError(ErrorKind::Io, file.string() + ":" + std::to_string(lineno) + ": missing '='");
      }
      auto trim = [](std::string s) {
        const auto b = s.find_first_not_of(" \t");
        const auto e = s.find_last_not_of(" \t\r");
        return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
      };
      header[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
  }
  auto get = [&](const char* key) -> const std::string& {
    auto it = header.find(key);
    if (it == header.end()) throw SolverError(ErrorKind::Io, std::string("snapshot header lacks '") + key + "'");
    return it->second;
  };
  if (get("format") != "kcl-snapshot-1") throw SolverError(ErrorKind::Io, "unknown snapshot format");

  Snapshot s;
  GridSpec g;
  g.n1 = std::stoi(get("n1"));
  g.n2 = std::stoi(get("n2"));
  g.xi1_min = std::stod(get("xi1_min"));
  g.xi1_max = std::stod(get("xi1_max"));
  g.xi2_min = std::stod(get("xi2_min"));
  g.xi2_max = std::stod(get("xi2_max"));
  g.bc_xi1 = boundary_from_string(get("bc_xi1"));
  g.bc_xi2 = boundary_from_string(get("bc_xi2"));
  g.ghost = std::stoi(get("ghost"));
  g.validate();
  s.model = model_from_string(get("model"));
  s.step = std::stol(get("step"));
  s.field = Field(g);
  s.field.t = std::stod(get("t"));
  s.mesh = FrontMesh(g.n1, g.n2);
  s.mesh.t = s.field.t;
  s.ct = CtState(g);

  {
    const fs::path file = dir / "cells.csv";
    auto in = open_in(file);
    std::string line;
    std::getline(in, line);
    long lineno = 1;
    long rows = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (line.empty()) continue;
      const auto v = split_row(line, 17, file, lineno);
      const int i = static_cast<int>(v[0]);
      const int j = static_cast<int>(v[1]);
      if (i < 0 || i >= g.n1 || j < 0 || j >= g.n2) {
        throw SolverError(ErrorKind::Io, file.string() + ":" + std::to_string(lineno) + ": cell index out of range");
      }
      ConservedState& w = s.field.w(i, j);
      for (int k = 0; k < kMaxVars; ++k) w[k] = v[static_cast<std::size_t>(4 + k)];
      s.mesh.at(i, j) = Vec3{v[12], v[13], v[14]};
      ++rows;
    }
    if (rows != static_cast<long>(g.n1) * g.n2) throw SolverError(ErrorKind::Io, "cells.csv is incomplete");
  }
  {
    const fs::path file = dir / "nodes.csv";
    auto in = open_in(file);
    std::string line;
    std::getline(in, line);
    long lineno = 1;
    long rows = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (line.empty()) continue;
      const auto v = split_row(line, 5, file, lineno);
      const int I = static_cast<int>(v[0]);
      const int J = static_cast<int>(v[1]);
      if (I < 0 || I > g.n1 || J < 0 || J > g.n2) {
        throw SolverError(ErrorKind::Io, file.string() + ":" + std::to_string(lineno) + ": node index out of range");
      }
      s.ct.potential(I, J) = Vec3{v[2], v[3], v[4]};
      ++rows;
    }
    if (rows != static_cast<long>(g.n1 + 1) * (g.n2 + 1)) throw SolverError(ErrorKind::Io, "nodes.csv is incomplete");
  }
  collocate_edges(s.ct);
  fill_ghosts(s.field);
  return s;
}

}  // namespace kcl
