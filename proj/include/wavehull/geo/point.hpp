#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "wavehull/error.hpp"
#include "wavehull/geo/predicates.hpp"

namespace wavehull::geo {

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point& a, const Point& b) { return a.x == b.x && a.y == b.y; }
  friend bool operator!=(const Point& a, const Point& b) { return !(a == b); }
};

inline bool lex_less(const Point& a, const Point& b) {
  return a.x < b.x || (a.x == b.x && a.y < b.y);
}

inline double dist2(const Point& a, const Point& b) {
  double dx = a.x - b.x, dy = a.y - b.y;
  return dx * dx + dy * dy;
}

inline double dist(const Point& a, const Point& b) { return std::sqrt(dist2(a, b)); }

inline double orient(const Point& a, const Point& b, const Point& c) {
  return orient2d(a.x, a.y, b.x, b.y, c.x, c.y);
}

inline double in_circle(const Point& a, const Point& b, const Point& c, const Point& d) {
  return incircle(a.x, a.y, b.x, b.y, c.x, c.y, d.x, d.y);
}

// c strictly inside the open segment (a,b); callers must have checked collinearity
inline bool strictly_between(const Point& a, const Point& b, const Point& c) {
  if (a.x != b.x) return (a.x < c.x) != (b.x < c.x) && c.x != a.x && c.x != b.x;
  return (a.y < c.y) != (b.y < c.y) && c.y != a.y && c.y != b.y;
}

// Coordinates beyond this magnitude would push the exact predicates toward
// overflow; far outside any sane world size.
inline constexpr double kMaxCoord = 1e30;
inline constexpr double kMinSeparation = 1e-9;

class PointSet {
 public:
  explicit PointSet(std::vector<Point> pts) : pts_(std::move(pts)) {
    if (pts_.empty()) fail(errc::validation, "point set must contain at least one point");
    for (std::size_t i = 0; i < pts_.size(); ++i) {
      const Point& p = pts_[i];
      if (!std::isfinite(p.x) || !std::isfinite(p.y) || std::fabs(p.x) > kMaxCoord ||
          std::fabs(p.y) > kMaxCoord)
        fail(errc::validation, "point " + std::to_string(i) + " has non-finite or oversized coordinates");
    }
    for (std::size_t i = 0; i < pts_.size(); ++i)
      for (std::size_t j = i + 1; j < pts_.size(); ++j)
        if (dist(pts_[i], pts_[j]) < kMinSeparation)
          fail(errc::validation, "points " + std::to_string(i) + " and " + std::to_string(j) +
                                     " closer than minimum separation 1e-9");
  }

  const std::vector<Point>& points() const { return pts_; }
  std::size_t size() const { return pts_.size(); }
  const Point& operator[](std::size_t i) const { return pts_[i]; }

  double diameter() const {
    double best = 0.0;
    for (std::size_t i = 0; i < pts_.size(); ++i)
      for (std::size_t j = i + 1; j < pts_.size(); ++j) best = std::max(best, dist2(pts_[i], pts_[j]));
    return std::sqrt(best);
  }

  // +inf for a single point
  double min_pairwise_distance() const {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < pts_.size(); ++i)
      for (std::size_t j = i + 1; j < pts_.size(); ++j) best = std::min(best, dist2(pts_[i], pts_[j]));
    return std::sqrt(best);
  }

 private:
  std::vector<Point> pts_;
};

}  // namespace wavehull::geo
