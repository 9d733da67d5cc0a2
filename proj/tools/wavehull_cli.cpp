// wavehull command line: generate point sets, compute exact hulls, run the
// wave simulation, compare polygons, and render field previews. One verb per
// invocation; all outputs land in --out-dir.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wavehull/error.hpp"
#include "wavehull/field/builder.hpp"
#include "wavehull/field/grid.hpp"
#include "wavehull/gen.hpp"
#include "wavehull/geo/alpha.hpp"
#include "wavehull/geo/convex_hull.hpp"
#include "wavehull/geo/metrics.hpp"
#include "wavehull/geo/polygon.hpp"
#include "wavehull/io/files.hpp"
#include "wavehull/io/json.hpp"
#include "wavehull/io/manifest.hpp"
#include "wavehull/io/pgm.hpp"
#include "wavehull/io/scenario.hpp"
#include "wavehull/morph/morph.hpp"
#include "wavehull/sim/oregonator.hpp"

namespace fs = std::filesystem;
using namespace wavehull;

namespace {

// 0 ok, 1 runtime or numeric, 2 degenerate or disconnected geometry,
// 3 usage or validation
int exit_code_for(errc c) {
  switch (c) {
    case errc::validation:
    case errc::parse:
    case errc::size_limit:
      return 3;
    case errc::degenerate:
    case errc::disconnected_shape:
      return 2;
    default:
      return 1;
  }
}

struct GlobalOpts {
  std::string out_dir = ".";
  std::optional<std::uint64_t> seed;
  bool quiet = false;

  std::string out(const std::string& name) const {
    return (fs::path(out_dir) / name).string();
  }
  void ensure_out_dir() const {
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) fail(errc::io, "cannot create output directory '" + out_dir + "': " + ec.message());
  }
  void note(const std::string& msg) const {
    if (!quiet) std::fprintf(stdout, "%s\n", msg.c_str());
  }
};

int cmd_gen(const GlobalOpts& g, long long n, const std::string& shape) {
  if (n < 3) fail(errc::validation, "need at least 3 points, got " + std::to_string(n));
  std::uint64_t seed = g.seed.value_or(0);
  geo::PointSet ps = gen_points(shape, static_cast<std::size_t>(n), seed);
  g.ensure_out_dir();
  std::string path = g.out("points.csv");
  io::write_points(path, ps,
                   "shape=" + shape + " n=" + std::to_string(n) +
                       " seed=" + std::to_string(seed));
  g.note("wrote " + path);
  return 0;
}

int cmd_exact(const GlobalOpts& g, const std::string& points_path, double radius) {
  if (!(radius > 0.0)) fail(errc::validation, "carving radius must be positive");
  geo::PointSet ps = io::read_points(points_path);
  g.ensure_out_dir();

  geo::Polygon convex = geo::convex_hull_jarvis(ps);
  io::write_polygon(g.out("convex.csv"), convex);

  io::JsonObject summary;
  summary["carving_radius"] = radius;
  summary["points"] = static_cast<long long>(ps.size());
  summary["convex.area"] = geo::area(convex);
  summary["convex.perimeter"] = geo::perimeter(convex);
  summary["convex.vertices"] = static_cast<long long>(convex.vertices.size());

  try {
    geo::Polygon concave = geo::concave_hull(ps, radius);
    io::write_polygon(g.out("concave.csv"), concave);
    summary["status"] = "ok";
    summary["concave.area"] = geo::area(concave);
    summary["concave.perimeter"] = geo::perimeter(concave);
    summary["concave.vertices"] = static_cast<long long>(concave.vertices.size());
  } catch (const Error& e) {
    if (e.code() != errc::degenerate && e.code() != errc::disconnected_shape) throw;
    summary["status"] = e.code() == errc::degenerate ? "degenerate" : "disconnected";
    summary["error"] = std::string(e.what());
    io::write_file_atomic(g.out("exact.json"), io::json_line(summary));
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  io::write_file_atomic(g.out("exact.json"), io::json_line(summary));
  g.note("wrote " + g.out("convex.csv") + ", " + g.out("concave.csv") + ", " +
         g.out("exact.json"));
  return 0;
}

int cmd_simulate(const GlobalOpts& g, const std::string& scenario_path) {
  io::Scenario sc = io::load_scenario(scenario_path);
  if (!g.out_dir.empty() && g.out_dir != ".") sc.out_dir = g.out_dir;
  if (sc.out_dir.empty()) sc.out_dir = ".";
  if (g.seed) {
    if (!sc.has_generator())
      fail(errc::validation, "--seed only applies to generator-based scenarios");
    sc.points_seed = *g.seed;
  }
  geo::PointSet ps = sc.load_points();

  auto t0 = std::chrono::steady_clock::now();
  sim::SimResult res = sim::run(ps, sc.grid, sc.field, sc.sim);
  auto t1 = std::chrono::steady_clock::now();

  io::RunManifest m;
  m.scenario = sc;
  m.halt = res.halt;
  m.trail_cells = res.state.trail.count();
  m.wall_ms = std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();

  geo::Polygon extracted = morph::outer_contour(res.state.trail);
  m.contour_ok = !extracted.degenerate;
  morph::TubeNetwork net = morph::thin_to_network(res.state.trail);
  m.skeleton_junctions = static_cast<int>(net.junctions.size());
  m.skeleton_cycles = net.cycles;
  m.enclosure = morph::enclosure_check(res.state.trail, ps);

  m.hulls_ok = ps.size() >= 3;
  if (m.hulls_ok) {
    double r_eff = sc.effective_carving_radius(ps);
    double step = sc.grid.dx / 2.0;
    geo::Polygon concave = geo::concave_hull(ps, r_eff);
    geo::Polygon convex = geo::convex_hull_jarvis(ps);
    if (m.contour_ok) {
      m.vs_concave = geo::polygon_metrics(extracted, concave, step);
      m.vs_convex = geo::polygon_metrics(extracted, convex, step);
    }
  }

  fs::path dir(sc.out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) fail(errc::io, "cannot create output directory '" + sc.out_dir + "': " + ec.message());

  auto emit = [&](const std::string& name) { m.artifacts.push_back(name); };
  if (sc.render_u) {
    io::write_pgm((dir / "final_u.pgm").string(), res.state.u);
    emit("final_u.pgm");
  }
  if (sc.render_trail) {
    io::write_pgm((dir / "trail.pgm").string(), res.state.trail);
    emit("trail.pgm");
  }
  if (sc.render_skeleton) {
    io::write_pgm((dir / "skeleton.pgm").string(), net.skeleton);
    emit("skeleton.pgm");
  }
  if (m.contour_ok) {
    io::write_polygon((dir / "hull.csv").string(), extracted);
    emit("hull.csv");
  }
  emit("manifest.json");
  io::write_manifest((dir / "manifest.json").string(), m);

  if (!g.quiet) std::fputs(io::json_line(io::manifest_json(m)).c_str(), stdout);
  return 0;
}

int cmd_compare(const GlobalOpts& g, const std::string& a_path, const std::string& b_path,
                double step) {
  geo::Polygon a = io::read_polygon(a_path);
  geo::Polygon b = io::read_polygon(b_path);
  geo::HullMetrics metrics = geo::polygon_metrics(a, b, step);

  io::JsonObject obj;
  obj["hausdorff"] = metrics.hausdorff;
  obj["area_jaccard"] = metrics.area_jaccard;
  obj["perimeter_a"] = metrics.perimeter_a;
  obj["perimeter_b"] = metrics.perimeter_b;
  std::string line = io::json_line(obj);

  std::fputs(line.c_str(), stdout);
  g.ensure_out_dir();
  io::write_file_atomic(g.out("compare.json"), line);
  return 0;
}

int cmd_render(const GlobalOpts& g, const std::string& scenario_path) {
  io::Scenario sc = io::load_scenario(scenario_path);
  geo::PointSet ps = sc.load_points();
  field::validate_grid(sc.grid);
  field::validate_field_config(sc.field, ps);
  field::validate_margin(ps, sc.grid);

  field::ScalarField eta = field::build_attractant(ps, sc.grid, sc.field);
  field::ScalarField phi = field::build_phi(eta, sc.field);
  field::ObstacleMask obstacles = field::build_obstacles(ps, sc.grid, sc.field);

  // display-normalized copies; raw magnitudes are far below the [0,1] map
  auto normalized = [](const field::ScalarField& f) {
    field::ScalarField out = f;
    double lo = out.values.empty() ? 0.0 : out.values[0], hi = lo;
    for (double v : out.values) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    double span = hi - lo;
    for (double& v : out.values) v = span > 0.0 ? (v - lo) / span : 0.0;
    return out;
  };

  g.ensure_out_dir();
  io::write_pgm(g.out("attractant.pgm"), normalized(eta));
  io::write_pgm(g.out("phi.pgm"), normalized(phi));
  morph::BinaryImage mask(sc.grid);
  for (int r = 0; r < sc.grid.height; ++r)
    for (int c = 0; c < sc.grid.width; ++c) mask.set(r, c, obstacles.at(r, c));
  io::write_pgm(g.out("obstacles.pgm"), mask);
  g.note("wrote " + g.out("attractant.pgm") + ", " + g.out("phi.pgm") + ", " +
         g.out("obstacles.pgm"));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"excitable-wave concave hull toolkit"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOpts g;
  app.add_option("--out-dir", g.out_dir, "directory for output artifacts");
  std::uint64_t seed_raw = 0;
  auto* seed_opt = app.add_option("--seed", seed_raw, "override the point generator seed");
  app.add_flag("--quiet", g.quiet, "suppress informational output");

  auto* gen = app.add_subcommand("gen", "generate a point set");
  long long gen_n = 0;
  std::string gen_shape;
  gen->add_option("n", gen_n, "number of points")->required();
  gen->add_option("shape", gen_shape, "uniform|crescent|ring|grid")->required();

  auto* exact = app.add_subcommand("exact", "compute exact convex and concave hulls");
  std::string exact_points;
  double exact_radius = 0.0;
  exact->add_option("points", exact_points, "point CSV file")->required();
  exact->add_option("--radius", exact_radius, "carving radius")->required();

  auto* simulate = app.add_subcommand("simulate", "run a wave simulation scenario");
  std::string sim_scenario;
  simulate->add_option("scenario", sim_scenario, "scenario file")->required();

  auto* compare = app.add_subcommand("compare", "compare two polygon files");
  std::string cmp_a, cmp_b;
  double cmp_step = 0.125;
  compare->add_option("a", cmp_a, "first polygon file")->required();
  compare->add_option("b", cmp_b, "second polygon file")->required();
  compare->add_option("--step", cmp_step, "boundary sampling step");

  auto* render = app.add_subcommand("render", "render scenario fields as PGM previews");
  std::string render_scenario;
  render->add_option("scenario", render_scenario, "scenario file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 3;
  }
  if (seed_opt->count() > 0) g.seed = seed_raw;

  try {
    if (gen->parsed()) return cmd_gen(g, gen_n, gen_shape);
    if (exact->parsed()) return cmd_exact(g, exact_points, exact_radius);
    if (simulate->parsed()) return cmd_simulate(g, sim_scenario);
    if (compare->parsed()) return cmd_compare(g, cmp_a, cmp_b, cmp_step);
    if (render->parsed()) return cmd_render(g, render_scenario);
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 3;
}
