#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "wavehull/error.hpp"
#include "wavehull/geo/point.hpp"
#include "wavehull/geo/polygon.hpp"

namespace wavehull::geo {

struct HullMetrics {
  double hausdorff = 0.0;
  double area_jaccard = 0.0;
  double perimeter_a = 0.0;
  double perimeter_b = 0.0;
};

namespace detail {

inline double point_segment_dist(const Point& p, const Point& a, const Point& b) {
  double vx = b.x - a.x, vy = b.y - a.y;
  double wx = p.x - a.x, wy = p.y - a.y;
  double vv = vx * vx + vy * vy;
  double t = vv > 0.0 ? std::clamp((wx * vx + wy * vy) / vv, 0.0, 1.0) : 0.0;
  double dx = wx - t * vx, dy = wy - t * vy;
  return std::hypot(dx, dy);
}

inline double dist_to_boundary(const Point& p, const Polygon& poly) {
  const auto& v = poly.vertices;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0, n = v.size(); i < n; ++i)
    best = std::min(best, point_segment_dist(p, v[i], v[(i + 1) % n]));
  return best;
}

inline double directed_hausdorff(const Polygon& a, const Polygon& b, double step) {
  const auto& v = a.vertices;
  double worst = 0.0;
  for (std::size_t i = 0, n = v.size(); i < n; ++i) {
    const Point& p = v[i];
    const Point& q = v[(i + 1) % n];
    double len = dist(p, q);
    int pieces = std::max(1, static_cast<int>(std::ceil(len / step)));
    for (int s = 0; s < pieces; ++s) {
      double t = static_cast<double>(s) / pieces;
      Point sample{p.x + t * (q.x - p.x), p.y + t * (q.y - p.y)};
      worst = std::max(worst, dist_to_boundary(sample, b));
    }
  }
  return worst;
}

// parity test only; boundary cells land on either side, which washes out of
// the area ratio at the sampling resolution
inline bool fast_inside(const Polygon& poly, double x, double y) {
  const auto& v = poly.vertices;
  bool in = false;
  for (std::size_t i = 0, n = v.size(); i < n; ++i) {
    const Point& a = v[i];
    const Point& b = v[(i + 1) % n];
    if ((a.y > y) != (b.y > y)) {
      double xc = a.x + (y - a.y) / (b.y - a.y) * (b.x - a.x);
      if (x < xc) in = !in;
    }
  }
  return in;
}

}  // namespace detail

// Symmetric Hausdorff by boundary sampling at the given arc step, area
// Jaccard by rasterising both polygons over their joint bounding box at the
// same step, perimeters exact from the vertex cycles.
inline HullMetrics polygon_metrics(const Polygon& a, const Polygon& b, double sampling_step) {
  if (a.degenerate || b.degenerate) fail(errc::degenerate, "metrics need non-degenerate polygons");
  if (!(sampling_step > 0.0) || !std::isfinite(sampling_step))
    fail(errc::validation, "sampling step must be positive and finite");

  HullMetrics m;
  m.perimeter_a = perimeter(a);
  m.perimeter_b = perimeter(b);
  m.hausdorff = std::max(detail::directed_hausdorff(a, b, sampling_step),
                         detail::directed_hausdorff(b, a, sampling_step));

  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
  double ymin = xmin, ymax = -xmin;
  for (const Polygon* poly : {&a, &b}) {
    for (const Point& p : poly->vertices) {
      xmin = std::min(xmin, p.x);
      xmax = std::max(xmax, p.x);
      ymin = std::min(ymin, p.y);
      ymax = std::max(ymax, p.y);
    }
  }
  long cols = std::lround(std::ceil((xmax - xmin) / sampling_step)) + 1;
  long rows = std::lround(std::ceil((ymax - ymin) / sampling_step)) + 1;
  long both = 0, either = 0;
  for (long r = 0; r < rows; ++r) {
    double y = ymin + (static_cast<double>(r) + 0.5) * sampling_step;
    for (long c = 0; c < cols; ++c) {
      double x = xmin + (static_cast<double>(c) + 0.5) * sampling_step;
      bool ia = detail::fast_inside(a, x, y);
      bool ib = detail::fast_inside(b, x, y);
      if (ia && ib) ++both;
      if (ia || ib) ++either;
    }
  }
  m.area_jaccard = either == 0 ? 0.0 : static_cast<double>(both) / static_cast<double>(either);
  return m;
}

}  // namespace wavehull::geo
