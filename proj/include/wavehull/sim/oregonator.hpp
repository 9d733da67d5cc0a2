#pragma once

// Two-variable excitable-medium integrator: explicit Euler on
//   du/dt = (1/eps)(u - u^2 - (f v + phi)(u - q)/(u + q)) + Du lap(u)
//   dv/dt = u - v
// with a five-point Laplacian, no-flux mirrors at grid edges and obstacles,
// and a monotone trail matrix recording every cell that ever exceeded the
// activity threshold.

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>

#include "wavehull/error.hpp"
#include "wavehull/field/builder.hpp"
#include "wavehull/field/grid.hpp"
#include "wavehull/morph/morph.hpp"

namespace wavehull::sim {

struct SimConfig {
  double dt = 5e-3;
  double epsilon = 0.03;
  double f = 1.4;
  double q = 0.022;
  double du = 1.0;
  double threshold = 0.1;
  int inoculation_row = 0;
  int inoculation_col = 0;
  int inoculation_size = 11;
  long long max_steps = 50000;
  long long quiet_window = 2000;
  std::uint64_t rng_seed = 0;  // reserved; the dynamics are deterministic
};

struct SimState {
  field::ScalarField u;
  field::ScalarField v;
  morph::BinaryImage trail;
  long long step = 0;
  long long active_count = 0;

  SimState() = default;
  explicit SimState(const field::Grid& g) : u(g, 0.0), v(g, 0.0), trail(g) {}
};

enum class HaltReason { quiescent, trail_stable, max_steps };

struct HaltReport {
  HaltReason reason = HaltReason::max_steps;
  long long steps_taken = 0;
  std::optional<long long> envelop_step;
};

struct SimResult {
  SimState state;
  HaltReport halt;
};

inline const char* halt_reason_name(HaltReason r) {
  switch (r) {
    case HaltReason::quiescent: return "quiescent";
    case HaltReason::trail_stable: return "trail_stable";
    default: return "max_steps";
  }
}

inline void validate_sim_config(const SimConfig& cfg, const field::Grid& grid) {
  if (!(cfg.dt > 0) || !std::isfinite(cfg.dt))
    fail(errc::validation, "time step must be positive");
  if (!(cfg.epsilon > 0) || !std::isfinite(cfg.epsilon))
    fail(errc::validation, "epsilon must be positive");
  if (!(cfg.q > 0) || !std::isfinite(cfg.q))
    fail(errc::validation, "q must be positive");
  if (!(cfg.du > 0) || !std::isfinite(cfg.du))
    fail(errc::validation, "diffusion coefficient must be positive");
  if (!std::isfinite(cfg.f) || cfg.f < 0)
    fail(errc::validation, "stoichiometric factor must be non-negative");
  if (!(cfg.threshold > 0) || !std::isfinite(cfg.threshold))
    fail(errc::validation, "activity threshold must be positive");
  double dt_max = grid.dx * grid.dx / (4.0 * cfg.du);
  if (cfg.dt > dt_max)
    fail(errc::validation, "time step " + std::to_string(cfg.dt) +
                               " violates the stability bound dx^2/(4 Du) = " +
                               std::to_string(dt_max));
  if (cfg.inoculation_size < 1)
    fail(errc::validation, "inoculation size must be at least 1");
  if (cfg.max_steps < 0) fail(errc::validation, "max_steps must be non-negative");
  if (cfg.quiet_window < 1) fail(errc::validation, "quiet window must be at least 1");
}

// reaction terms only; diffusion is added by step
inline std::pair<double, double> kinetics(double u, double v, double phi,
                                          const SimConfig& cfg) {
  double du_dt =
      (u - u * u - (cfg.f * v + phi) * (u - cfg.q) / (u + cfg.q)) / cfg.epsilon;
  double dv_dt = u - v;
  return {du_dt, dv_dt};
}

// rest concentration for a given local excitability: the root of the
// reaction balance with v = u. The balance is positive at q and negative
// at 1, so bisection over (q, 1) always lands on the rest branch.
inline double steady_state(double phi, const SimConfig& cfg) {
  auto balance = [&](double u) {
    return u - u * u - (cfg.f * u + phi) * (u - cfg.q) / (u + cfg.q);
  };
  double lo = cfg.q, hi = 1.0;
  for (int i = 0; i < 80; ++i) {
    double mid = 0.5 * (lo + hi);
    (balance(mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

inline double laplacian5(const field::ScalarField& f, int row, int col,
                         const field::ObstacleMask* mask_or_null) {
  const field::Grid& g = f.grid;
  double center = f.at(row, col);
  auto neighbor = [&](int r, int c) {
    if (!g.in_bounds(r, c)) return center;
    if (mask_or_null && mask_or_null->at(r, c)) return center;
    return f.at(r, c);
  };
  double sum = neighbor(row - 1, col) + neighbor(row + 1, col) +
               neighbor(row, col - 1) + neighbor(row, col + 1);
  return (sum - 4.0 * center) / (g.dx * g.dx);
}

namespace detail {

inline constexpr double kBlowupLimit = 1e3;

// synchronous update reading only from `in`; returns whether the trail grew
inline bool step_into(const SimState& in, const field::ScalarField& phi,
                      const field::ObstacleMask& mask, const SimConfig& cfg,
                      SimState& out) {
  const field::Grid& g = in.u.grid;
  const int w = g.width, h = g.height;
  const double inv_dx2 = 1.0 / (g.dx * g.dx);
  const double dt = cfg.dt, inv_eps = 1.0 / cfg.epsilon;
  const double f = cfg.f, q = cfg.q, du = cfg.du, thr = cfg.threshold;

  const double* u0 = in.u.values.data();
  const double* v0 = in.v.values.data();
  const double* ph = phi.values.data();
  const std::uint8_t* blk = mask.blocked.data();
  double* u1 = out.u.values.data();
  double* v1 = out.v.values.data();
  std::uint8_t* trail = out.trail.bits.data();

  bool trail_grew = false;
  long long active = 0;
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      std::size_t i = (std::size_t)r * w + c;
      if (blk[i]) {
        u1[i] = 0.0;
        v1[i] = 0.0;
        trail[i] = 0;
        continue;
      }
      double uc = u0[i], vc = v0[i];
      double un_ = (r + 1 < h && !blk[i + w]) ? u0[i + w] : uc;
      double us = (r > 0 && !blk[i - w]) ? u0[i - w] : uc;
      double ue = (c + 1 < w && !blk[i + 1]) ? u0[i + 1] : uc;
      double uw = (c > 0 && !blk[i - 1]) ? u0[i - 1] : uc;
      double lap = (un_ + us + ue + uw - 4.0 * uc) * inv_dx2;
      double react = (uc - uc * uc - (f * vc + ph[i]) * (uc - q) / (uc + q)) * inv_eps;
      double u_next = uc + dt * (react + du * lap);
      double v_next = vc + dt * (uc - vc);
      if (!(std::fabs(u_next) <= kBlowupLimit) || !(std::fabs(v_next) <= kBlowupLimit))
        fail(errc::numeric_blowup,
             "state exceeded " + std::to_string(kBlowupLimit) + " at step " +
                 std::to_string(in.step + 1) + "; reduce dt or check parameters");
      u1[i] = u_next;
      v1[i] = v_next;
      if (u_next > thr) {
        ++active;
        if (!trail[i]) {
          trail[i] = 1;
          trail_grew = true;
        }
      }
    }
  }
  out.step = in.step + 1;
  out.active_count = active;
  return trail_grew;
}

}  // namespace detail

inline SimState step(const SimState& state, const field::ScalarField& phi,
                     const field::ObstacleMask& mask, const SimConfig& cfg) {
  SimState out(state.u.grid);
  out.trail = state.trail;
  detail::step_into(state, phi, mask, cfg, out);
  return out;
}

inline void inoculate(SimState& state, const field::ObstacleMask& mask,
                      const SimConfig& cfg) {
  const field::Grid& g = state.u.grid;
  int half_lo = (cfg.inoculation_size - 1) / 2;
  int half_hi = cfg.inoculation_size / 2;
  int r0 = cfg.inoculation_row - half_lo, r1 = cfg.inoculation_row + half_hi;
  int c0 = cfg.inoculation_col - half_lo, c1 = cfg.inoculation_col + half_hi;
  if (r0 < 0 || c0 < 0 || r1 >= g.height || c1 >= g.width)
    fail(errc::validation, "inoculation block extends outside the grid");
  for (int r = r0; r <= r1; ++r)
    for (int c = c0; c <= c1; ++c)
      if (mask.at(r, c))
        fail(errc::validation, "inoculation block intersects an obstacle");
  for (int r = r0; r <= r1; ++r) {
    for (int c = c0; c <= c1; ++c) {
      state.u.at(r, c) = 1.0;
      state.trail.set(r, c, true);
    }
  }
  long long active = 0;
  for (double x : state.u.values)
    if (x > cfg.threshold) ++active;
  state.active_count = active;
}

// enclosure is polled on a fixed cadence; cheap relative to a PDE step yet
// frequent enough that envelop_step is accurate to under one percent
inline constexpr long long kEnvelopCheckInterval = 25;

inline SimResult run(const geo::PointSet& ps, const field::Grid& grid,
                     const field::FieldConfig& fcfg, const SimConfig& scfg) {
  field::validate_grid(grid);
  validate_sim_config(scfg, grid);
  field::ScalarField eta = field::build_attractant(ps, grid, fcfg);
  field::ScalarField phi = field::build_phi(eta, fcfg);
  field::ObstacleMask mask = field::build_obstacles(ps, grid, fcfg);

  SimResult result;
  result.state = SimState(grid);
  // the medium starts at its local rest state so only the inoculation
  // perturbs it; a zero background would self-ignite everywhere
  for (int r = 0; r < grid.height; ++r)
    for (int c = 0; c < grid.width; ++c) {
      if (mask.at(r, c)) continue;
      double rest = steady_state(phi.at(r, c), scfg);
      result.state.u.at(r, c) = rest;
      result.state.v.at(r, c) = rest;
    }
  inoculate(result.state, mask, scfg);

  auto check_envelop = [&](SimState& st, std::optional<long long>& rec) {
    if (!rec && morph::enclosure_check(st.trail, ps)) rec = st.step;
  };
  check_envelop(result.state, result.halt.envelop_step);

  SimState scratch(grid);
  scratch.trail = result.state.trail;
  long long quiet_steps = 0;
  while (result.state.step < scfg.max_steps) {
    scratch.trail.bits = result.state.trail.bits;
    bool grew = detail::step_into(result.state, phi, mask, scfg, scratch);
    std::swap(result.state, scratch);
    quiet_steps = grew ? 0 : quiet_steps + 1;
    if (!result.halt.envelop_step &&
        result.state.step % kEnvelopCheckInterval == 0)
      check_envelop(result.state, result.halt.envelop_step);
    if (result.state.active_count == 0) {
      result.halt.reason = HaltReason::quiescent;
      break;
    }
    if (quiet_steps >= scfg.quiet_window) {
      result.halt.reason = HaltReason::trail_stable;
      break;
    }
  }
  result.halt.steps_taken = result.state.step;
  check_envelop(result.state, result.halt.envelop_step);
  return result;
}

}  // namespace wavehull::sim
