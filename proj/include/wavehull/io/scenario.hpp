#pragma once

// Run configuration as a flat "key = value" text file with dotted keys.
// Unknown or duplicate keys are rejected so typos fail loudly instead of
// silently keeping a default. A scenario either names a points file
// (resolved relative to the scenario's own directory) or a generator.

#include <cerrno>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "wavehull/error.hpp"
#include "wavehull/field/builder.hpp"
#include "wavehull/field/grid.hpp"
#include "wavehull/gen.hpp"
#include "wavehull/geo/point.hpp"
#include "wavehull/io/files.hpp"
#include "wavehull/sim/oregonator.hpp"

namespace wavehull::io {

struct Scenario {
  // exactly one source: a points file path or a generator triple
  std::string points_file;  // already resolved against the scenario dir
  std::string points_shape;
  long long points_n = 0;
  std::uint64_t points_seed = 0;

  field::Grid grid{300, 300, 0.25, {0.0, 0.0}};
  field::FieldConfig field;
  sim::SimConfig sim;
  double carving_radius = 0.0;  // 0 means "auto": twice the set diameter

  std::string out_dir;  // empty means the CLI decides
  bool render_u = true;
  bool render_trail = true;
  bool render_skeleton = true;

  bool has_generator() const { return !points_shape.empty(); }

  geo::PointSet load_points() const {
    if (has_generator()) return gen_points(points_shape, static_cast<std::size_t>(points_n), points_seed);
    return read_points(points_file);
  }

  double effective_carving_radius(const geo::PointSet& ps) const {
    return carving_radius > 0.0 ? carving_radius : 2.0 * ps.diameter();
  }
};

namespace detail {

struct KvFile {
  std::map<std::string, std::string> kv;
  std::string path;

  bool has(const std::string& key) const { return kv.count(key) != 0; }

  std::string take(std::set<std::string>& unused, const std::string& key) {
    unused.erase(key);
    return kv.at(key);
  }
};

inline KvFile parse_kv(const std::string& path) {
  KvFile f;
  f.path = path;
  std::istringstream in(read_file(path));
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string body = trim(line);
    if (body.empty() || body[0] == '#') continue;
    std::size_t eq = body.find('=');
    if (eq == std::string::npos)
      fail(errc::parse,
           path + ": line " + std::to_string(line_no) + ": expected 'key = value'");
    std::string key = trim(body.substr(0, eq));
    std::string val = trim(body.substr(eq + 1));
    if (key.empty())
      fail(errc::parse, path + ": line " + std::to_string(line_no) + ": empty key");
    if (!f.kv.emplace(key, val).second)
      fail(errc::parse,
           path + ": line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
  }
  return f;
}

inline double kv_real(const KvFile& f, const std::string& key) {
  const std::string& s = f.kv.at(key);
  char* end = nullptr;
  errno = 0;
  double v = std::strtod(s.c_str(), &end);
  if (errno != 0 || s.empty() || end != s.c_str() + s.size())
    fail(errc::parse, f.path + ": key '" + key + "': expected a real number, got '" + s + "'");
  return v;
}

inline long long kv_int(const KvFile& f, const std::string& key) {
  const std::string& s = f.kv.at(key);
  char* end = nullptr;
  errno = 0;
  long long v = std::strtoll(s.c_str(), &end, 10);
  if (errno != 0 || s.empty() || end != s.c_str() + s.size())
    fail(errc::parse, f.path + ": key '" + key + "': expected an integer, got '" + s + "'");
  return v;
}

inline bool kv_bool(const KvFile& f, const std::string& key) {
  const std::string& s = f.kv.at(key);
  if (s == "true") return true;
  if (s == "false") return false;
  fail(errc::parse, f.path + ": key '" + key + "': expected true or false, got '" + s + "'");
}

inline std::string fmt_real17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace detail

inline Scenario load_scenario(const std::string& path) {
  detail::KvFile f = detail::parse_kv(path);
  Scenario sc;

  std::set<std::string> unused;
  for (const auto& [k, v] : f.kv) unused.insert(k);
  auto seen = [&](const std::string& key) {
    unused.erase(key);
    return f.has(key);
  };

  if (seen("points.file")) {
    std::filesystem::path p = f.kv.at("points.file");
    if (p.is_relative()) p = std::filesystem::path(path).parent_path() / p;
    sc.points_file = p.string();
  }
  if (seen("points.shape")) sc.points_shape = f.kv.at("points.shape");
  if (seen("points.n")) sc.points_n = detail::kv_int(f, "points.n");
  if (seen("points.seed")) sc.points_seed = static_cast<std::uint64_t>(detail::kv_int(f, "points.seed"));

  bool has_file = !sc.points_file.empty();
  bool has_gen = !sc.points_shape.empty() || f.has("points.n") || f.has("points.seed");
  if (has_file && has_gen)
    fail(errc::validation, path + ": give either points.file or points.shape, not both");
  if (!has_file && !has_gen)
    fail(errc::validation, path + ": a points source is required (points.file or points.shape)");
  if (has_gen && (sc.points_shape.empty() || !f.has("points.n")))
    fail(errc::validation, path + ": generator source needs points.shape and points.n");

  if (seen("grid.width")) sc.grid.width = static_cast<int>(detail::kv_int(f, "grid.width"));
  if (seen("grid.height")) sc.grid.height = static_cast<int>(detail::kv_int(f, "grid.height"));
  if (seen("grid.dx")) sc.grid.dx = detail::kv_real(f, "grid.dx");
  if (seen("grid.origin_x")) sc.grid.origin.x = detail::kv_real(f, "grid.origin_x");
  if (seen("grid.origin_y")) sc.grid.origin.y = detail::kv_real(f, "grid.origin_y");

  if (seen("field.amplitude")) sc.field.gradient_amplitude = detail::kv_real(f, "field.amplitude");
  if (seen("field.profile")) {
    const std::string& p = f.kv.at("field.profile");
    if (p == "linear") sc.field.profile = field::Profile::linear;
    else if (p == "exponential") sc.field.profile = field::Profile::exponential;
    else fail(errc::parse, path + ": field.profile must be linear or exponential, got '" + p + "'");
  }
  if (seen("field.length_scale")) sc.field.gradient_length_scale = detail::kv_real(f, "field.length_scale");
  if (seen("field.repellent_radius")) sc.field.repellent_radius = detail::kv_real(f, "field.repellent_radius");
  if (seen("field.phi0")) sc.field.phi0 = detail::kv_real(f, "field.phi0");

  if (seen("sim.dt")) sc.sim.dt = detail::kv_real(f, "sim.dt");
  if (seen("sim.epsilon")) sc.sim.epsilon = detail::kv_real(f, "sim.epsilon");
  if (seen("sim.f")) sc.sim.f = detail::kv_real(f, "sim.f");
  if (seen("sim.q")) sc.sim.q = detail::kv_real(f, "sim.q");
  if (seen("sim.du")) sc.sim.du = detail::kv_real(f, "sim.du");
  if (seen("sim.threshold")) sc.sim.threshold = detail::kv_real(f, "sim.threshold");
  if (seen("sim.inoculation_row")) sc.sim.inoculation_row = static_cast<int>(detail::kv_int(f, "sim.inoculation_row"));
  if (seen("sim.inoculation_col")) sc.sim.inoculation_col = static_cast<int>(detail::kv_int(f, "sim.inoculation_col"));
  if (seen("sim.inoculation_size")) sc.sim.inoculation_size = static_cast<int>(detail::kv_int(f, "sim.inoculation_size"));
  if (seen("sim.max_steps")) sc.sim.max_steps = detail::kv_int(f, "sim.max_steps");
  if (seen("sim.quiet_window")) sc.sim.quiet_window = detail::kv_int(f, "sim.quiet_window");

  if (seen("exact.carving_radius")) sc.carving_radius = detail::kv_real(f, "exact.carving_radius");
  if (seen("out.dir")) sc.out_dir = f.kv.at("out.dir");
  if (seen("render.u")) sc.render_u = detail::kv_bool(f, "render.u");
  if (seen("render.trail")) sc.render_trail = detail::kv_bool(f, "render.trail");
  if (seen("render.skeleton")) sc.render_skeleton = detail::kv_bool(f, "render.skeleton");

  if (!unused.empty())
    fail(errc::validation, path + ": unknown key '" + *unused.begin() + "'");

  if (sc.carving_radius < 0.0)
    fail(errc::validation, path + ": exact.carving_radius must be positive or omitted");
  return sc;
}

// canonical flat serialization of the fields that affect computed output;
// excludes out dir and render toggles so cosmetic choices keep the hash
inline std::map<std::string, std::string> semantic_fields(const Scenario& sc) {
  std::map<std::string, std::string> m;
  if (sc.has_generator()) {
    m["points.shape"] = sc.points_shape;
    m["points.n"] = std::to_string(sc.points_n);
    m["points.seed"] = std::to_string(sc.points_seed);
  } else {
    m["points.file"] = sc.points_file;
  }
  m["grid.width"] = std::to_string(sc.grid.width);
  m["grid.height"] = std::to_string(sc.grid.height);
  m["grid.dx"] = detail::fmt_real17(sc.grid.dx);
  m["grid.origin_x"] = detail::fmt_real17(sc.grid.origin.x);
  m["grid.origin_y"] = detail::fmt_real17(sc.grid.origin.y);
  m["field.amplitude"] = detail::fmt_real17(sc.field.gradient_amplitude);
  m["field.profile"] = sc.field.profile == field::Profile::linear ? "linear" : "exponential";
  m["field.length_scale"] = detail::fmt_real17(sc.field.gradient_length_scale);
  m["field.repellent_radius"] = detail::fmt_real17(sc.field.repellent_radius);
  m["field.phi0"] = detail::fmt_real17(sc.field.phi0);
  m["sim.dt"] = detail::fmt_real17(sc.sim.dt);
  m["sim.epsilon"] = detail::fmt_real17(sc.sim.epsilon);
  m["sim.f"] = detail::fmt_real17(sc.sim.f);
  m["sim.q"] = detail::fmt_real17(sc.sim.q);
  m["sim.du"] = detail::fmt_real17(sc.sim.du);
  m["sim.threshold"] = detail::fmt_real17(sc.sim.threshold);
  m["sim.inoculation_row"] = std::to_string(sc.sim.inoculation_row);
  m["sim.inoculation_col"] = std::to_string(sc.sim.inoculation_col);
  m["sim.inoculation_size"] = std::to_string(sc.sim.inoculation_size);
  m["sim.max_steps"] = std::to_string(sc.sim.max_steps);
  m["sim.quiet_window"] = std::to_string(sc.sim.quiet_window);
  m["exact.carving_radius"] = detail::fmt_real17(sc.carving_radius);
  return m;
}

inline std::uint64_t fnv1a64(const std::string& data) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

inline std::string config_hash(const Scenario& sc) {
  std::string canon;
  for (const auto& [k, v] : semantic_fields(sc)) canon += k + "=" + v + "\n";
  char buf[24];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(fnv1a64(canon)));
  return buf;
}

}  // namespace wavehull::io
