// Acceptance gate: ten end-to-end checks over the exact geometry engine, the
// wave simulator, and the shipped fixture scenarios. Prints one PASS/FAIL
// line per check and exits nonzero if any check fails. Every tolerance and
// time budget is pinned right where the check runs.

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wavehull/field/builder.hpp"
#include "wavehull/field/grid.hpp"
#include "wavehull/gen.hpp"
#include "wavehull/geo/alpha.hpp"
#include "wavehull/geo/convex_hull.hpp"
#include "wavehull/geo/metrics.hpp"
#include "wavehull/geo/polygon.hpp"
#include "wavehull/io/files.hpp"
#include "wavehull/io/scenario.hpp"
#include "wavehull/morph/morph.hpp"
#include "wavehull/rng.hpp"
#include "wavehull/sim/oregonator.hpp"

namespace fs = std::filesystem;
using namespace wavehull;
using Clock = std::chrono::steady_clock;

namespace {

int g_failed = 0;

void line(int idx, const char* label, bool pass, const std::string& detail) {
  std::printf("[%s] %2d %s%s%s\n", pass ? "PASS" : "FAIL", idx, label,
              detail.empty() ? "" : ": ", detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failed;
}

double secs_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string num(double v, int prec) {
  char b[64];
  std::snprintf(b, sizeof(b), "%.*f", prec, v);
  return b;
}

std::string sci(double v) {
  char b[64];
  std::snprintf(b, sizeof(b), "%.2e", v);
  return b;
}

std::string fixture(const char* name) {
  return (fs::path(WAVEHULL_FIXTURE_DIR) / name).string();
}

void check_convex_oracle() {
  auto t0 = Clock::now();
  Rng pick(101);
  bool ok = true;
  std::string detail;
  for (int i = 0; i < 200 && ok; ++i) {
    std::size_t n = 4 + pick.below(61);
    geo::PointSet ps = gen_points("uniform", n, 1000 + i);
    if (!geo::same_cycle(geo::convex_hull_jarvis(ps), geo::convex_hull_bruteforce(ps))) {
      ok = false;
      detail = "cycle mismatch on set " + std::to_string(i) + " (n=" + std::to_string(n) + ")";
    }
  }
  double el = secs_since(t0);
  if (ok && el >= 10.0) {
    ok = false;
    detail = "took " + num(el, 1) + " s, budget 10 s";
  }
  if (ok) detail = "200 sets in " + num(el, 1) + " s";
  line(1, "jarvis march equals the brute-force hull on random sets", ok, detail);
}

void check_alpha_oracle() {
  auto t0 = Clock::now();
  Rng pick(202);
  bool ok = true;
  std::string detail;
  int checked = 0;
  for (int i = 0; i < 100 && ok; ++i) {
    std::size_t n = 4 + pick.below(9);  // the disc oracle is cubic, keep sets small
    geo::PointSet ps = gen_points("uniform", n, 2000 + i);
    double d = ps.diameter();
    for (double f : {0.05, 0.15, 0.4, 0.8, 2.5}) {  // collapse through convex
      auto got = geo::alpha_shape(ps, f * d).kept_edges;
      auto want = geo::alpha_edges_bruteforce(ps, f * d);
      std::sort(got.begin(), got.end());
      std::sort(want.begin(), want.end());
      ++checked;
      if (got != want) {
        ok = false;
        detail = "edge mismatch on set " + std::to_string(i) + " at radius " + num(f * d, 3);
        break;
      }
    }
  }
  double el = secs_since(t0);
  if (ok && el >= 30.0) {
    ok = false;
    detail = "took " + num(el, 1) + " s, budget 30 s";
  }
  if (ok) detail = std::to_string(checked) + " shape/radius pairs in " + num(el, 1) + " s";
  line(2, "alpha-shape edges match the empty-disc oracle across radii", ok, detail);
}

void check_collapse_to_convex() {
  Rng pick(303);
  bool ok = true;
  std::string detail;
  for (int i = 0; i < 50 && ok; ++i) {
    std::size_t n = 4 + pick.below(29);
    geo::PointSet ps = gen_points("uniform", n, 3000 + i);
    geo::Polygon carved = geo::concave_hull(ps, 2.0 * ps.diameter());
    if (!geo::same_cycle(carved, geo::convex_hull_jarvis(ps))) {
      ok = false;
      detail = "cycle mismatch on set " + std::to_string(i) + " (n=" + std::to_string(n) + ")";
    }
  }
  if (ok) detail = "50 sets";
  line(3, "carving at twice the diameter reproduces the convex hull", ok, detail);
}

void check_rest_state_fixed_point() {
  field::Grid grid{64, 64, 0.25, {0.0, 0.0}};
  sim::SimConfig cfg;
  const double phi0 = field::FieldConfig{}.phi0;
  field::ScalarField phi(grid, phi0);
  field::ObstacleMask mask(grid);

  double ustar = sim::steady_state(phi0, cfg);
  sim::SimState rest(grid);
  for (double& x : rest.u.values) x = ustar;
  for (double& x : rest.v.values) x = ustar;
  sim::SimState settled = sim::step(rest, phi, mask, cfg);
  double drift = 0.0;
  for (std::size_t i = 0; i < rest.u.values.size(); ++i) {
    drift = std::max(drift, std::fabs(settled.u.values[i] - ustar));
    drift = std::max(drift, std::fabs(settled.v.values[i] - ustar));
  }

  // the uniform zero state kicks every cell by exactly dt*phi0/epsilon in u
  // and leaves v untouched
  sim::SimState zero(grid);
  sim::SimState kicked = sim::step(zero, phi, mask, cfg);
  const double expected = cfg.dt * phi0 / cfg.epsilon;
  double kick_err = 0.0, v_err = 0.0;
  for (std::size_t i = 0; i < kicked.u.values.size(); ++i) {
    kick_err = std::max(kick_err, std::fabs(kicked.u.values[i] - expected));
    v_err = std::max(v_err, std::fabs(kicked.v.values[i]));
  }

  bool ok = drift <= 1e-9 && kick_err <= 1e-9 && v_err == 0.0;
  std::string detail = "rest drift " + sci(drift) + ", zero-state kick " +
                       num(kicked.u.values[0], 8) + " vs " + num(expected, 8);
  line(4, "the homogeneous rest state is a one-step fixed point", ok, detail);
}

struct FixtureAudit {
  io::Scenario sc;
  geo::PointSet ps;
  sim::SimResult res;
  long long reach_step = -1;    // first step the trail touches a data point cell
  long long within5_step = -1;  // first step the centroid sits within five cells
  std::vector<std::pair<long long, double>> window;  // centroid distance each 500 steps
  bool trail_monotone = true;
  bool obstacles_clear = true;
  long long audits = 0;
  double wall_secs = 0.0;

  FixtureAudit(io::Scenario s, geo::PointSet p) : sc(std::move(s)), ps(std::move(p)) {}
};

// Mirrors sim::run step for step, adding probes the library loop does not
// need: per-step reach detection, centroid sampling every 10 steps, and a
// trail and obstacle audit every 100 steps.
FixtureAudit run_audited(const char* scenario_name, bool track_centroid) {
  io::Scenario sc = io::load_scenario(fixture(scenario_name));
  geo::PointSet ps = sc.load_points();
  FixtureAudit a(std::move(sc), std::move(ps));
  auto t0 = Clock::now();

  const field::Grid& grid = a.sc.grid;
  field::validate_grid(grid);
  sim::validate_sim_config(a.sc.sim, grid);
  field::ScalarField eta = field::build_attractant(a.ps, grid, a.sc.field);
  field::ScalarField phi = field::build_phi(eta, a.sc.field);
  field::ObstacleMask mask = field::build_obstacles(a.ps, grid, a.sc.field);

  sim::SimResult& result = a.res;
  result.state = sim::SimState(grid);
  for (int r = 0; r < grid.height; ++r)
    for (int c = 0; c < grid.width; ++c) {
      if (mask.at(r, c)) continue;
      double rest = sim::steady_state(phi.at(r, c), a.sc.sim);
      result.state.u.at(r, c) = rest;
      result.state.v.at(r, c) = rest;
    }
  sim::inoculate(result.state, mask, a.sc.sim);

  std::vector<std::pair<int, int>> cells;
  for (std::size_t i = 0; i < a.ps.size(); ++i)
    cells.push_back({grid.row_of(a.ps[i].y), grid.col_of(a.ps[i].x)});

  auto centroid_distance = [&](const sim::SimState& st) {
    double sx = 0.0, sy = 0.0;
    long long n = 0;
    for (int r = 0; r < grid.height; ++r)
      for (int c = 0; c < grid.width; ++c)
        if (st.u.at(r, c) > a.sc.sim.threshold) {
          geo::Point p = grid.center(r, c);
          sx += p.x;
          sy += p.y;
          ++n;
        }
    if (n == 0) return std::numeric_limits<double>::quiet_NaN();
    return std::hypot(sx / n - a.ps[0].x, sy / n - a.ps[0].y);
  };

  auto probe = [&](const sim::SimState& st) {
    if (a.reach_step < 0)
      for (auto [r, c] : cells)
        if (st.trail.at(r, c)) {
          a.reach_step = st.step;
          break;
        }
    if (!track_centroid) return;
    if (st.step % 10 == 0 && a.within5_step < 0) {
      double d = centroid_distance(st);
      if (d == d && d <= 5.0 * grid.dx) a.within5_step = st.step;
    }
    if (st.step % 500 == 0) a.window.push_back({st.step, centroid_distance(st)});
  };

  std::vector<std::uint8_t> last_trail = result.state.trail.bits;
  auto audit = [&](const sim::SimState& st) {
    ++a.audits;
    for (std::size_t i = 0; i < last_trail.size(); ++i) {
      if (last_trail[i] && !st.trail.bits[i]) a.trail_monotone = false;
      if (mask.blocked[i] &&
          (st.trail.bits[i] || st.u.values[i] > a.sc.sim.threshold))
        a.obstacles_clear = false;
    }
    last_trail = st.trail.bits;
  };

  auto check_envelop = [&](sim::SimState& st, std::optional<long long>& rec) {
    if (!rec && morph::enclosure_check(st.trail, a.ps)) rec = st.step;
  };

  probe(result.state);
  check_envelop(result.state, result.halt.envelop_step);

  sim::SimState scratch(grid);
  scratch.trail = result.state.trail;
  long long quiet_steps = 0;
  while (result.state.step < a.sc.sim.max_steps) {
    scratch.trail.bits = result.state.trail.bits;
    bool grew = sim::detail::step_into(result.state, phi, mask, a.sc.sim, scratch);
    std::swap(result.state, scratch);
    quiet_steps = grew ? 0 : quiet_steps + 1;
    probe(result.state);
    if (result.state.step % 100 == 0) audit(result.state);
    if (!result.halt.envelop_step &&
        result.state.step % sim::kEnvelopCheckInterval == 0)
      check_envelop(result.state, result.halt.envelop_step);
    if (result.state.active_count == 0) {
      result.halt.reason = sim::HaltReason::quiescent;
      break;
    }
    if (quiet_steps >= a.sc.sim.quiet_window) {
      result.halt.reason = sim::HaltReason::trail_stable;
      break;
    }
  }
  result.halt.steps_taken = result.state.step;
  check_envelop(result.state, result.halt.envelop_step);
  audit(result.state);
  a.wall_secs = secs_since(t0);
  return a;
}

void check_chemotaxis(const FixtureAudit& a) {
  bool ok = true;
  std::string detail;
  if (a.within5_step < 0) {
    ok = false;
    detail = "centroid never came within five cells of the attractant";
  }
  for (std::size_t k = 1; ok && k < a.window.size(); ++k) {
    if (a.window[k].first > a.within5_step) break;
    if (!(a.window[k].second < a.window[k - 1].second)) {
      ok = false;
      detail = "distance rose across the window ending at step " +
               std::to_string(a.window[k].first);
    }
  }
  if (ok && a.res.halt.reason == sim::HaltReason::max_steps) {
    ok = false;
    detail = "still active after " + std::to_string(a.res.halt.steps_taken) + " steps";
  }
  if (ok && a.wall_secs > 60.0) {
    ok = false;
    detail = "took " + num(a.wall_secs, 1) + " s, budget 60 s";
  }
  if (ok)
    detail = "within five cells at step " + std::to_string(a.within5_step) +
             ", quiet after " + std::to_string(a.res.halt.steps_taken) + " steps in " +
             num(a.wall_secs, 1) + " s";
  line(5, "the wave centroid homes monotonically onto a lone attractant", ok, detail);
}

struct FixtureScore {
  double hausdorff = 0.0, tol_h = 0.0, jaccard = 0.0;
  bool enclosure = false, cycle_ok = false;
  bool pass = false;
};

FixtureScore score_fixture(const FixtureAudit& a) {
  FixtureScore s;
  geo::Polygon extracted = morph::outer_contour(a.res.state.trail);
  geo::Polygon exact = geo::concave_hull(a.ps, a.sc.effective_carving_radius(a.ps));
  geo::HullMetrics m = geo::polygon_metrics(extracted, exact, a.sc.grid.dx / 2.0);
  s.hausdorff = m.hausdorff;
  s.tol_h = a.sc.field.repellent_radius + 5.0 * a.sc.grid.dx;
  s.jaccard = m.area_jaccard;
  s.enclosure = morph::enclosure_check(a.res.state.trail, a.ps);
  morph::TubeNetwork net = morph::thin_to_network(a.res.state.trail);
  s.cycle_ok = net.cycles >= 1 && morph::enclosure_check(net.skeleton, a.ps);
  s.pass = s.hausdorff <= s.tol_h && s.jaccard >= 0.80 && s.enclosure && s.cycle_ok &&
           a.wall_secs <= 300.0;
  return s;
}

void check_fixture_match(const FixtureAudit& cv, const FixtureAudit& cr) {
  FixtureScore a = score_fixture(cv);
  FixtureScore b = score_fixture(cr);
  auto one = [](const char* name, const FixtureScore& s) {
    return std::string(name) + " hausdorff " + num(s.hausdorff, 2) + " (tol " +
           num(s.tol_h, 2) + ") jaccard " + num(s.jaccard, 2) + " (min 0.80) enclosure " +
           (s.enclosure ? "yes" : "no") + " cycle " + (s.cycle_ok ? "yes" : "no");
  };
  line(6, "the traced contour matches the exact concave hull on both fixtures",
       a.pass && b.pass, one("convex5", a) + "; " + one("crescent8", b));
}

void check_no_repellent_cover(const FixtureAudit& a) {
  morph::BinaryImage filled = morph::largest_component_filled(a.res.state.trail);
  std::size_t covered = 0;
  for (std::size_t i = 0; i < a.ps.size(); ++i)
    if (filled.at(a.sc.grid.row_of(a.ps[i].y), a.sc.grid.col_of(a.ps[i].x))) ++covered;
  bool ok = covered == a.ps.size();
  line(7, "without repellents the trail floods over every data point", ok,
       std::to_string(covered) + "/" + std::to_string(a.ps.size()) + " point cells covered");
}

void check_perimeter_scaling(const FixtureAudit& chemo, const FixtureAudit& s1,
                             const FixtureAudit& s15) {
  bool ok = true;
  std::string detail;
  double p1 = geo::perimeter(geo::concave_hull(s1.ps, s1.sc.effective_carving_radius(s1.ps)));
  double p15 =
      geo::perimeter(geo::concave_hull(s15.ps, s15.sc.effective_carving_radius(s15.ps)));
  double pr = p15 / p1;
  long long t_app = chemo.reach_step;
  const auto& e1 = s1.res.halt.envelop_step;
  const auto& e15 = s15.res.halt.envelop_step;
  if (t_app < 0 || !e1 || !e15) {
    ok = false;
    detail = "missing approach or envelop step";
  } else if (*e1 <= t_app || *e15 <= t_app) {
    ok = false;
    detail = "envelop recorded before the approach finished";
  } else {
    double er = static_cast<double>(*e15 - t_app) / static_cast<double>(*e1 - t_app);
    ok = std::fabs(er - pr) <= 0.30 * pr;
    detail = "perimeter ratio " + num(pr, 3) + ", envelop ratio " + num(er, 3) +
             " after a " + std::to_string(t_app) + "-step approach";
  }
  line(8, "envelop time scales with hull perimeter across a 1.5x pair", ok, detail);
}

int run_cli(const std::string& args) {
  std::string cmd = std::string("\"") + WAVEHULL_CLI_PATH + "\" " + args;
  int st = std::system(cmd.c_str());
  return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

std::string strip_wall_ms(std::string s) {
  auto pos = s.find("\"wall_ms\":");
  if (pos == std::string::npos) return s;
  auto end = s.find_first_of(",}", pos + 10);
  s.erase(pos, end - pos);
  return s;
}

void check_determinism() {
  fs::path base =
      fs::temp_directory_path() / ("wavehull_acceptance_" + std::to_string(::getpid()));
  fs::remove_all(base);
  fs::create_directories(base);
  std::string scn = fixture("convex5.scn");
  int r1 = run_cli("simulate " + scn + " --out-dir " + (base / "a").string() + " --quiet");
  int r2 = run_cli("simulate " + scn + " --out-dir " + (base / "b").string() + " --quiet");
  bool ok = r1 == 0 && r2 == 0;
  std::string detail;
  if (!ok) {
    detail = "simulate exited " + std::to_string(r1) + " and " + std::to_string(r2);
  } else {
    bool trail_same = io::read_file((base / "a" / "trail.pgm").string()) ==
                      io::read_file((base / "b" / "trail.pgm").string());
    bool manifest_same =
        strip_wall_ms(io::read_file((base / "a" / "manifest.json").string())) ==
        strip_wall_ms(io::read_file((base / "b" / "manifest.json").string()));
    ok = trail_same && manifest_same;
    detail = std::string(trail_same ? "trail bytes identical" : "trail bytes differ") +
             (manifest_same ? ", manifests identical up to wall time" : ", manifests differ");
  }
  fs::remove_all(base);
  line(9, "repeat runs produce byte-identical trails and manifests", ok, detail);
}

void check_invariants(std::initializer_list<const FixtureAudit*> runs) {
  bool ok = true;
  long long audits = 0;
  for (const FixtureAudit* a : runs) {
    ok = ok && a->trail_monotone && a->obstacles_clear && a->audits > 0;
    audits += a->audits;
  }
  line(10, "the trail only grows and obstacle cells never fire", ok,
       std::to_string(audits) + " audits across " + std::to_string(runs.size()) +
           " fixture runs");
}

}  // namespace

int main() {
  try {
    check_convex_oracle();
    check_alpha_oracle();
    check_collapse_to_convex();
    check_rest_state_fixed_point();
    FixtureAudit chemo = run_audited("chemotaxis.scn", true);
    check_chemotaxis(chemo);
    FixtureAudit cv = run_audited("convex5.scn", false);
    FixtureAudit cr = run_audited("crescent8.scn", false);
    check_fixture_match(cv, cr);
    FixtureAudit nr = run_audited("convex5_norep.scn", false);
    check_no_repellent_cover(nr);
    FixtureAudit s1 = run_audited("scale1.scn", false);
    FixtureAudit s15 = run_audited("scale15.scn", false);
    check_perimeter_scaling(chemo, s1, s15);
    check_determinism();
    check_invariants({&chemo, &cv, &cr, &nr, &s1, &s15});
  } catch (const std::exception& e) {
    std::fprintf(stderr, "acceptance aborted: %s\n", e.what());
    return 1;
  }
  std::printf("%d/10 checks passed\n", 10 - g_failed);
  return g_failed == 0 ? 0 : 1;
}
