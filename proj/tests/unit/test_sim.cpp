#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <vector>

#include "wavehull/error.hpp"
#include "wavehull/field/builder.hpp"
#include "wavehull/field/grid.hpp"
#include "wavehull/sim/oregonator.hpp"

using namespace wavehull;
using field::Grid;
using field::ObstacleMask;
using field::ScalarField;
using geo::PointSet;
using sim::SimConfig;
using sim::SimState;

namespace {

constexpr double kPhi0 = 0.0766;

Grid grid40() { return Grid{40, 40, 0.25, {0.0, 0.0}}; }

// reaction balance u - u^2 - (f u + phi0)(u - q)/(u + q) at u = v
double reaction_balance(double u, const SimConfig& cfg) {
  return u - u * u - (cfg.f * u + kPhi0) * (u - cfg.q) / (u + cfg.q);
}

// the rest state of the homogeneous medium, found independently of kinetics
double steady_u(const SimConfig& cfg) {
  double lo = cfg.q, hi = 1.0;
  REQUIRE(reaction_balance(lo, cfg) > 0);
  REQUIRE(reaction_balance(hi, cfg) < 0);
  for (int i = 0; i < 200; ++i) {
    double mid = 0.5 * (lo + hi);
    (reaction_balance(mid, cfg) > 0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("reaction terms at the origin reduce to phi over epsilon") {
  SimConfig cfg;
  auto [du, dv] = sim::kinetics(0.0, 0.0, kPhi0, cfg);
  CHECK(du == Catch::Approx(kPhi0 / 0.03).epsilon(1e-12));
  CHECK(dv == 0.0);

  auto [du2, dv2] = sim::kinetics(0.2, 0.05, kPhi0, cfg);
  CHECK(dv2 == Catch::Approx(0.15).margin(1e-15));
  auto [du3, dv3] = sim::kinetics(0.05, 0.2, kPhi0, cfg);
  CHECK(dv3 == Catch::Approx(-0.15).margin(1e-15));
  (void)du2;
  (void)du3;
}

TEST_CASE("the homogeneous rest state is a fixed point of the kinetics") {
  SimConfig cfg;
  double u_star = steady_u(cfg);
  CHECK(u_star > cfg.q);
  CHECK(u_star < 0.1);
  auto [du, dv] = sim::kinetics(u_star, u_star, kPhi0, cfg);
  CHECK(std::fabs(du) < 1e-12);
  CHECK(std::fabs(dv) < 1e-12);
}

TEST_CASE("one step from the rest state moves no cell beyond 1e-9") {
  Grid g = grid40();
  SimConfig cfg;
  double u_star = steady_u(cfg);
  SimState state(g);
  for (double& x : state.u.values) x = u_star;
  for (double& x : state.v.values) x = u_star;
  ScalarField phi(g, kPhi0);
  ObstacleMask mask(g);
  SimState next = sim::step(state, phi, mask, cfg);
  double worst = 0.0;
  for (std::size_t i = 0; i < next.u.values.size(); ++i) {
    worst = std::max(worst, std::fabs(next.u.values[i] - u_star));
    worst = std::max(worst, std::fabs(next.v.values[i] - u_star));
  }
  CHECK(worst < 1e-9);
  CHECK(next.step == 1);
}

TEST_CASE("one step from the zero state lifts u by dt phi over epsilon") {
  Grid g = grid40();
  SimConfig cfg;
  SimState state(g);
  ScalarField phi(g, kPhi0);
  ObstacleMask mask(g);
  SimState next = sim::step(state, phi, mask, cfg);
  double expect = 5e-3 * (kPhi0 / 0.03);
  for (double x : next.u.values) REQUIRE(x == Catch::Approx(expect).margin(1e-12));
  CHECK(expect == Catch::Approx(0.01276667).margin(5e-9));
  for (double x : next.v.values) REQUIRE(x == 0.0);
  CHECK(next.active_count == 0);
  CHECK(next.trail.count() == 0);
}

TEST_CASE("five-point laplacian handles spikes, mirrors and obstacles") {
  Grid g = grid40();
  ScalarField f(g, 0.7);
  for (int r = 0; r < g.height; ++r)
    for (int c = 0; c < g.width; ++c) REQUIRE(sim::laplacian5(f, r, c, nullptr) == 0.0);

  ScalarField spike(g, 0.0);
  spike.at(20, 20) = 1.0;
  CHECK(sim::laplacian5(spike, 20, 20, nullptr) == Catch::Approx(-64.0).margin(1e-12));
  CHECK(sim::laplacian5(spike, 20, 21, nullptr) == Catch::Approx(16.0).margin(1e-12));
  CHECK(sim::laplacian5(spike, 21, 21, nullptr) == 0.0);

  // a blocked neighbor mirrors the center value instead of leaking
  ObstacleMask mask(g);
  mask.set(20, 21, true);
  CHECK(sim::laplacian5(spike, 20, 20, &mask) == Catch::Approx(-48.0).margin(1e-12));

  // grid corners mirror two off-grid neighbors
  ScalarField corner(g, 0.0);
  corner.at(0, 0) = 1.0;
  CHECK(sim::laplacian5(corner, 0, 0, nullptr) == Catch::Approx(-32.0).margin(1e-12));
}

TEST_CASE("step agrees with the public kinetics and laplacian cellwise") {
  Grid g{34, 37, 0.25, {0.0, 0.0}};
  SimConfig cfg;
  SimState state(g);
  std::mt19937_64 rng(1234);
  auto unit = [&] { return (double)(rng() >> 11) * 0x1.0p-53; };
  for (double& x : state.u.values) x = 0.5 * unit();
  for (double& x : state.v.values) x = 0.3 * unit();
  ScalarField phi(g, 0.0);
  for (double& x : phi.values) x = kPhi0 * (0.9 + 0.1 * unit());
  ObstacleMask mask(g);
  for (int k = 0; k < 40; ++k) mask.set((int)(rng() % g.height), (int)(rng() % g.width), true);
  for (int r = 0; r < g.height; ++r)
    for (int c = 0; c < g.width; ++c)
      if (mask.at(r, c)) {
        state.u.at(r, c) = 0.0;
        state.v.at(r, c) = 0.0;
      }

  SimState next = sim::step(state, phi, mask, cfg);
  for (int r = 0; r < g.height; ++r) {
    for (int c = 0; c < g.width; ++c) {
      if (mask.at(r, c)) {
        REQUIRE(next.u.at(r, c) == 0.0);
        REQUIRE(next.v.at(r, c) == 0.0);
        continue;
      }
      auto [du, dv] = sim::kinetics(state.u.at(r, c), state.v.at(r, c), phi.at(r, c), cfg);
      double lap = sim::laplacian5(state.u, r, c, &mask);
      double eu = state.u.at(r, c) + cfg.dt * (du + cfg.du * lap);
      double ev = state.v.at(r, c) + cfg.dt * dv;
      REQUIRE(next.u.at(r, c) == Catch::Approx(eu).margin(1e-13));
      REQUIRE(next.v.at(r, c) == Catch::Approx(ev).margin(1e-13));
    }
  }
}

TEST_CASE("step is pure and reproducible") {
  Grid g = grid40();
  SimConfig cfg;
  SimState state(g);
  state.u.at(20, 20) = 1.0;
  ScalarField phi(g, kPhi0);
  ObstacleMask mask(g);
  SimState copy = state;
  SimState a = sim::step(state, phi, mask, cfg);
  SimState b = sim::step(state, phi, mask, cfg);
  REQUIRE(state.u.values == copy.u.values);
  REQUIRE(state.v.values == copy.v.values);
  REQUIRE(a.u.values == b.u.values);
  REQUIRE(a.v.values == b.v.values);
  REQUIRE(a.trail.bits == b.trail.bits);
}

TEST_CASE("trail only grows and obstacles stay silent over a long run") {
  Grid g{48, 48, 0.25, {0.0, 0.0}};
  SimConfig cfg;
  cfg.inoculation_row = 14;
  cfg.inoculation_col = 14;
  cfg.inoculation_size = 7;
  SimState state(g);
  ScalarField phi(g, kPhi0);
  ObstacleMask mask(g);
  for (int r = 28; r <= 33; ++r)
    for (int c = 28; c <= 33; ++c) mask.set(r, c, true);
  sim::inoculate(state, mask, cfg);

  std::vector<std::uint8_t> prev_trail = state.trail.bits;
  for (int t = 0; t < 400; ++t) {
    state = sim::step(state, phi, mask, cfg);
    if (t % 25 != 0) continue;
    for (std::size_t i = 0; i < prev_trail.size(); ++i)
      REQUIRE(!(prev_trail[i] && !state.trail.bits[i]));
    prev_trail = state.trail.bits;
    for (int r = 28; r <= 33; ++r)
      for (int c = 28; c <= 33; ++c) {
        REQUIRE(state.u.at(r, c) == 0.0);
        REQUIRE(state.v.at(r, c) == 0.0);
        REQUIRE(!state.trail.at(r, c));
      }
  }
  CHECK(state.step == 400);
}

TEST_CASE("runaway values stop the integrator with a blowup error") {
  Grid g = grid40();
  SimConfig cfg;
  SimState state(g);
  ScalarField phi(g, 1e9);  // absurd forcing
  ObstacleMask mask(g);
  try {
    sim::step(state, phi, mask, cfg);
    FAIL("expected a blowup error");
  } catch (const Error& e) {
    CHECK(e.code() == errc::numeric_blowup);
  }
}

TEST_CASE("inoculation paints the block and nothing else") {
  Grid g{64, 64, 0.25, {0.0, 0.0}};
  SimConfig cfg;
  cfg.inoculation_row = 32;
  cfg.inoculation_col = 32;
  SimState state(g);
  ObstacleMask mask(g);
  sim::inoculate(state, mask, cfg);

  std::size_t ones = 0;
  for (double x : state.u.values) {
    REQUIRE((x == 0.0 || x == 1.0));
    if (x == 1.0) ++ones;
  }
  CHECK(ones == 121);
  CHECK(state.trail.count() == 121);
  CHECK(state.active_count == 121);
  for (int r = 27; r <= 37; ++r)
    for (int c = 27; c <= 37; ++c) REQUIRE(state.u.at(r, c) == 1.0);
  for (double x : state.v.values) REQUIRE(x == 0.0);

  SimConfig single = cfg;
  single.inoculation_size = 1;
  SimState s2(g);
  sim::inoculate(s2, mask, single);
  CHECK(s2.trail.count() == 1);
  CHECK(s2.u.at(32, 32) == 1.0);
}

TEST_CASE("inoculation rejects bad placement") {
  Grid g = grid40();
  SimConfig cfg;
  cfg.inoculation_row = 3;
  cfg.inoculation_col = 20;
  SimState state(g);
  ObstacleMask mask(g);
  CHECK_THROWS_AS(sim::inoculate(state, mask, cfg), Error);

  cfg.inoculation_row = 20;
  mask.set(22, 22, true);
  SimState s2(g);
  try {
    sim::inoculate(s2, mask, cfg);
    FAIL("expected an obstacle collision error");
  } catch (const Error& e) {
    CHECK(e.code() == errc::validation);
  }
}

TEST_CASE("config validation enforces the stability bound") {
  Grid g = grid40();
  SimConfig cfg;
  sim::validate_sim_config(cfg, g);  // defaults are stable at dx = 0.25

  SimConfig bad = cfg;
  bad.dt = 0.02;  // above dx^2 / (4 Du) = 0.015625
  CHECK_THROWS_AS(sim::validate_sim_config(bad, g), Error);

  SimConfig edge = cfg;
  edge.dt = 0.015625;
  sim::validate_sim_config(edge, g);

  bad = cfg;
  bad.epsilon = 0.0;
  CHECK_THROWS_AS(sim::validate_sim_config(bad, g), Error);
  bad = cfg;
  bad.max_steps = -1;
  CHECK_THROWS_AS(sim::validate_sim_config(bad, g), Error);
  bad = cfg;
  bad.inoculation_size = 0;
  CHECK_THROWS_AS(sim::validate_sim_config(bad, g), Error);
}

TEST_CASE("a zero-step run returns the inoculation block unchanged") {
  Grid g{64, 64, 0.25, {0.0, 0.0}};
  PointSet ps({{8.0, 8.0}});  // cell (32, 32)
  field::FieldConfig fcfg;
  SimConfig scfg;
  scfg.inoculation_row = 32;
  scfg.inoculation_col = 32;
  scfg.max_steps = 0;
  sim::SimResult res = sim::run(ps, g, fcfg, scfg);
  CHECK(res.halt.reason == sim::HaltReason::max_steps);
  CHECK(res.halt.steps_taken == 0);
  CHECK(res.state.trail.count() == 121);
  REQUIRE(res.halt.envelop_step.has_value());
  CHECK(*res.halt.envelop_step == 0);  // the point sits inside the block
}

TEST_CASE("strong suppression quenches the medium into a quiescent halt") {
  Grid g{48, 48, 0.25, {0.0, 0.0}};
  PointSet ps({{6.0, 6.0}});
  field::FieldConfig fcfg;
  fcfg.phi0 = 0.2;  // rest state stays far below threshold
  SimConfig scfg;
  scfg.inoculation_row = 24;
  scfg.inoculation_col = 24;
  scfg.inoculation_size = 5;
  scfg.max_steps = 20000;
  sim::SimResult res = sim::run(ps, g, fcfg, scfg);
  CHECK(res.halt.reason == sim::HaltReason::quiescent);
  CHECK(res.halt.steps_taken < 20000);
  CHECK(res.state.active_count == 0);
}

TEST_CASE("a saturated medium halts once the trail stops growing") {
  Grid g{48, 48, 0.25, {0.0, 0.0}};
  PointSet ps({{6.0, 6.0}});
  field::FieldConfig fcfg;
  fcfg.phi0 = 0.2;  // rest state near 0.027
  SimConfig scfg;
  scfg.threshold = 0.01;  // below the rest state, so activity never dies
  scfg.inoculation_row = 24;
  scfg.inoculation_col = 24;
  scfg.inoculation_size = 5;
  scfg.quiet_window = 50;
  scfg.max_steps = 20000;
  sim::SimResult res = sim::run(ps, g, fcfg, scfg);
  CHECK(res.halt.reason == sim::HaltReason::trail_stable);
  CHECK(res.state.active_count > 0);
  CHECK(res.halt.steps_taken < 20000);
}
