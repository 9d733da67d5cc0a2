#pragma once

// Excitability landscape synthesis. Data points emit a long-range attractant
// eta that lowers the excitability threshold phi = phi0 - eta/2, and a
// short-range repellent modeled as hard impassable discs of radius r_rep.

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "wavehull/error.hpp"
#include "wavehull/field/grid.hpp"
#include "wavehull/geo/point.hpp"

namespace wavehull::field {

enum class Profile { linear, exponential };

struct FieldConfig {
  double gradient_amplitude = 0.0011109;  // peak eta at a data point
  Profile profile = Profile::linear;
  double gradient_length_scale = 0.0;  // world units, exponential profile only
  double repellent_radius = 0.0;       // world units
  double phi0 = 0.0766;
};

inline void validate_field_config(const FieldConfig& cfg, const geo::PointSet& ps) {
  if (!(cfg.gradient_amplitude > 0.0) || !std::isfinite(cfg.gradient_amplitude))
    fail(errc::validation, "gradient amplitude must be positive and finite");
  if (!(cfg.phi0 > 0.0) || !std::isfinite(cfg.phi0))
    fail(errc::validation, "phi0 must be positive and finite");
  // keeps phi = phi0 - eta/2 positive everywhere
  if (!(cfg.gradient_amplitude < 2.0 * cfg.phi0))
    fail(errc::validation, "gradient amplitude must stay below 2*phi0");
  if (cfg.repellent_radius < 0.0 || !std::isfinite(cfg.repellent_radius))
    fail(errc::validation, "repellent radius must be nonnegative and finite");
  if (cfg.repellent_radius >= ps.min_pairwise_distance() / 2.0)
    fail(errc::validation, "repellent radius must be below half the minimum point separation");
  if (cfg.profile == Profile::exponential &&
      (!(cfg.gradient_length_scale > 0.0) || !std::isfinite(cfg.gradient_length_scale)))
    fail(errc::validation, "exponential profile needs a positive gradient length scale");
}

// every data point must sit well inside the grid so waves can wrap around it
inline void validate_margin(const geo::PointSet& ps, const Grid& g) {
  const double margin = 8.0 * g.dx;
  const double xmax = g.origin.x + (g.width - 1) * g.dx;
  const double ymax = g.origin.y + (g.height - 1) * g.dx;
  for (std::size_t i = 0; i < ps.size(); ++i) {
    const geo::Point& p = ps[i];
    if (p.x < g.origin.x + margin || p.x > xmax - margin || p.y < g.origin.y + margin ||
        p.y > ymax - margin)
      fail(errc::validation,
           "point " + std::to_string(i) + " is within 8 cells of the grid edge");
  }
}

inline double nearest_point_distance(const geo::PointSet& ps, const geo::Point& c) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < ps.size(); ++i) best = std::min(best, geo::dist(ps[i], c));
  return best;
}

inline ScalarField build_attractant(const geo::PointSet& ps, const Grid& g,
                                    const FieldConfig& cfg) {
  validate_grid(g);
  validate_field_config(cfg, ps);
  validate_margin(ps, g);
  ScalarField eta(g);
  const double A = cfg.gradient_amplitude;
  const double D = g.diagonal();
  for (int r = 0; r < g.height; ++r) {
    for (int c = 0; c < g.width; ++c) {
      double d = nearest_point_distance(ps, g.center(r, c));
      double v = cfg.profile == Profile::linear ? A * (1.0 - d / D)
                                                : A * std::exp(-d / cfg.gradient_length_scale);
      eta.at(r, c) = std::clamp(v, 0.0, A);
    }
  }
  return eta;
}

inline ScalarField build_phi(const ScalarField& eta, const FieldConfig& cfg) {
  ScalarField phi = eta;
  for (double& v : phi.values) v = cfg.phi0 - v / 2.0;
  return phi;
}

// strict inequality keeps r_rep = 0 an empty mask even at exact point cells
inline ObstacleMask build_obstacles(const geo::PointSet& ps, const Grid& g,
                                    const FieldConfig& cfg) {
  validate_grid(g);
  ObstacleMask mask(g);
  if (cfg.repellent_radius <= 0.0) return mask;
  for (int r = 0; r < g.height; ++r)
    for (int c = 0; c < g.width; ++c)
      if (nearest_point_distance(ps, g.center(r, c)) < cfg.repellent_radius)
        mask.set(r, c, true);
  return mask;
}

}  // namespace wavehull::field
