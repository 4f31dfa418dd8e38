#include "sepflow/field_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace sepflow {

std::string format_full(Real v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_field_csv(const std::string& path, const VelocityField& f, const AnnulusGrid& g,
                     const std::string& comment) {
  check_shape(f, g);
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open for writing: " + path);
  if (!comment.empty()) {
    std::istringstream lines(comment);
    std::string line;
    while (std::getline(lines, line)) out << "# " << line << "\n";
  }
  out << "r,theta,ur,utheta\n";
  for (int i = 0; i < g.nr; ++i)
    for (int j = 0; j < g.ntheta; ++j)
      out << format_full(g.r[i]) << ',' << format_full(g.theta(j)) << ','
          << format_full(f.ur(i, j)) << ',' << format_full(f.utheta(i, j)) << "\n";
  if (!out) throw ConfigError("write failed: " + path);
}

VelocityField read_field_csv(const std::string& path, const AnnulusGrid& g) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open: " + path);
  VelocityField f = VelocityField::zero(g);
  std::string line;
  bool header_seen = false;
  long row = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      if (line != "r,theta,ur,utheta") throw ConfigError("unexpected field CSV header in " + path);
      header_seen = true;
      continue;
    }
    double r, th, ur, ut;
    if (std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf", &r, &th, &ur, &ut) != 4)
      throw ConfigError("bad field CSV row in " + path + ": " + line);
    const long i = row / g.ntheta;
    const long j = row % g.ntheta;
    if (i >= g.nr) throw ConfigError("too many rows in " + path);
    f.ur(i, j) = ur;
    f.utheta(i, j) = ut;
    ++row;
  }
  if (row != static_cast<long>(g.nr) * g.ntheta) throw ConfigError("row count mismatch in " + path);
  return f;
}

void write_grid_json(const std::string& path, const AnnulusGrid& g) {
  nlohmann::json j{
      {"manifold", {{"kind", std::string(to_string(g.manifold.kind))}, {"a", g.manifold.a}}},
      {"obstacle", {{"delta", g.obstacle.delta}}},
      {"outer_radius", g.outer_radius},
      {"nr", g.nr},
      {"ntheta", g.ntheta},
  };
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open for writing: " + path);
  out << j.dump(2) << "\n";
}

AnnulusGrid read_grid_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("bad grid JSON in " + path + ": " + e.what());
  }
  try {
    ManifoldSpec m{manifold_from_string(j.at("manifold").at("kind").get<std::string>()),
                   j.at("manifold").at("a").get<Real>()};
    return AnnulusGrid(m, ObstacleSpec{j.at("obstacle").at("delta").get<Real>()},
                       j.at("outer_radius").get<Real>(), j.at("nr").get<int>(),
                       j.at("ntheta").get<int>());
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("bad grid JSON in " + path + ": " + e.what());
  }
}

}  // namespace sepflow
