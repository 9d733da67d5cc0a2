#pragma once

// Run manifest: everything needed to audit a simulation in one JSON line.
// wall_ms is the only field allowed to differ between identical runs.

#include <algorithm>
#include <string>
#include <vector>

#include "wavehull/geo/metrics.hpp"
#include "wavehull/io/json.hpp"
#include "wavehull/io/scenario.hpp"
#include "wavehull/sim/oregonator.hpp"

namespace wavehull::io {

struct RunManifest {
  Scenario scenario;
  sim::HaltReport halt;
  geo::HullMetrics vs_concave;  // extracted contour against the carved hull
  geo::HullMetrics vs_convex;   // extracted contour against the convex hull
  bool contour_ok = false;      // trail produced a usable outer contour
  bool hulls_ok = false;        // enough points for exact hulls to exist
  bool enclosure = false;
  int skeleton_junctions = 0;
  int skeleton_cycles = 0;
  long long trail_cells = 0;
  long long wall_ms = 0;
  std::vector<std::string> artifacts;
};

namespace detail {

inline void put_metrics(JsonObject& obj, const std::string& prefix, const geo::HullMetrics& m) {
  obj[prefix + ".hausdorff"] = m.hausdorff;
  obj[prefix + ".area_jaccard"] = m.area_jaccard;
  obj[prefix + ".perimeter_extracted"] = m.perimeter_a;
  obj[prefix + ".perimeter_exact"] = m.perimeter_b;
}

}  // namespace detail

inline JsonObject manifest_json(const RunManifest& m) {
  JsonObject obj;
  for (const auto& [k, v] : semantic_fields(m.scenario)) obj["scenario." + k] = v;
  obj["config_hash"] = config_hash(m.scenario);
  obj["halt.reason"] = sim::halt_reason_name(m.halt.reason);
  obj["halt.steps"] = m.halt.steps_taken;
  obj["envelop_step"] =
      m.halt.envelop_step ? JsonValue(*m.halt.envelop_step) : JsonValue(nullptr);
  obj["contour_ok"] = m.contour_ok;
  obj["hulls_ok"] = m.hulls_ok;
  if (m.contour_ok && m.hulls_ok) {
    detail::put_metrics(obj, "metrics.concave", m.vs_concave);
    detail::put_metrics(obj, "metrics.convex", m.vs_convex);
  }
  obj["enclosure"] = m.enclosure;
  obj["skeleton.junctions"] = m.skeleton_junctions;
  obj["skeleton.cycles"] = m.skeleton_cycles;
  obj["trail.cells"] = m.trail_cells;
  obj["wall_ms"] = m.wall_ms;
  std::vector<std::string> arts = m.artifacts;
  std::sort(arts.begin(), arts.end());
  obj["artifacts"] = arts;
  return obj;
}

inline void write_manifest(const std::string& path, const RunManifest& m) {
  write_file_atomic(path, json_line(manifest_json(m)));
}

}  // namespace wavehull::io
