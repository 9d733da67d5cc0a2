#pragma once

// Deterministic point-set generators shared by the CLI and the test suites.
// All shapes live in the [0,100] x [0,100] world box.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include "wavehull/error.hpp"
#include "wavehull/geo/point.hpp"
#include "wavehull/rng.hpp"

namespace wavehull {

inline constexpr double kGenMinSeparation = 0.5;

inline std::vector<geo::Point> gen_uniform(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<geo::Point> pts;
  pts.reserve(n);
  int attempts = 0;
  while (pts.size() < n) {
    if (++attempts > 100000) fail(errc::validation, "rejection sampling failed to place points");
    geo::Point p{rng.uniform(10.0, 90.0), rng.uniform(10.0, 90.0)};
    bool ok = true;
    for (const auto& q : pts)
      if (geo::dist(p, q) < kGenMinSeparation) ok = false;
    if (ok) pts.push_back(p);
  }
  return pts;
}

// open arc: concave hulls at moderate radius hug it, convex hulls span the chord
inline std::vector<geo::Point> gen_crescent(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<geo::Point> pts;
  pts.reserve(n);
  const double start = 0.25 * std::numbers::pi_v<double>;
  const double span = 1.5 * std::numbers::pi_v<double>;
  for (std::size_t i = 0; i < n; ++i) {
    double t = (n == 1) ? 0.5 : static_cast<double>(i) / static_cast<double>(n - 1);
    double ang = start + span * t + rng.uniform(-0.25, 0.25) * span / static_cast<double>(n);
    double r = 30.0 + rng.uniform(-1.5, 1.5);
    pts.push_back({50.0 + r * std::cos(ang), 50.0 + r * std::sin(ang)});
  }
  return pts;
}

inline std::vector<geo::Point> gen_ring(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<geo::Point> pts;
  pts.reserve(n);
  const double two_pi = 2.0 * std::numbers::pi_v<double>;
  for (std::size_t i = 0; i < n; ++i) {
    double ang = two_pi * static_cast<double>(i) / static_cast<double>(n) +
                 rng.uniform(-0.2, 0.2) * two_pi / static_cast<double>(n);
    double r = 30.0 + rng.uniform(-1.5, 1.5);
    pts.push_back({50.0 + r * std::cos(ang), 50.0 + r * std::sin(ang)});
  }
  return pts;
}

// exact lattice, row-major, no jitter; stresses collinear handling
inline std::vector<geo::Point> gen_grid(std::size_t n, std::uint64_t /*seed*/) {
  std::vector<geo::Point> pts;
  pts.reserve(n);
  if (n == 1) return {{50.0, 50.0}};
  std::size_t k = 1;
  while (k * k < n) ++k;
  double spacing = 60.0 / static_cast<double>(k - 1 ? k - 1 : 1);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t row = i / k, col = i % k;
    pts.push_back({20.0 + spacing * static_cast<double>(col), 20.0 + spacing * static_cast<double>(row)});
  }
  return pts;
}

inline geo::PointSet gen_points(const std::string& shape, std::size_t n, std::uint64_t seed) {
  if (shape == "uniform") return geo::PointSet(gen_uniform(n, seed));
  if (shape == "crescent") return geo::PointSet(gen_crescent(n, seed));
  if (shape == "ring") return geo::PointSet(gen_ring(n, seed));
  if (shape == "grid") return geo::PointSet(gen_grid(n, seed));
  fail(errc::validation, "unknown shape '" + shape + "' (expected uniform|crescent|ring|grid)");
}

}  // namespace wavehull
