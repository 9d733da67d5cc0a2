#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "wavehull/error.hpp"
#include "wavehull/geo/point.hpp"

namespace wavehull::geo {

// Non-degenerate polygons are simple cycles in strict counter-clockwise order
// with no three consecutive collinear vertices. Degenerate ones carry the flag
// and hold 1 vertex (point) or 2 (segment).
struct Polygon {
  std::vector<Point> vertices;
  bool degenerate = false;
};

inline double signed_area(const std::vector<Point>& v) {
  double twice = 0.0;
  for (std::size_t i = 0, n = v.size(); i < n; ++i) {
    const Point& a = v[i];
    const Point& b = v[(i + 1) % n];
    twice += a.x * b.y - b.x * a.y;
  }
  return twice / 2.0;
}

inline double area(const Polygon& p) {
  if (p.degenerate) return 0.0;
  return std::fabs(signed_area(p.vertices));
}

// closed-cycle length; a degenerate segment counts both directions
inline double perimeter(const Polygon& p) {
  const auto& v = p.vertices;
  if (v.size() < 2) return 0.0;
  double len = 0.0;
  for (std::size_t i = 0, n = v.size(); i < n; ++i) len += dist(v[i], v[(i + 1) % n]);
  return len;
}

// drops vertices that sit on the line through their cycle neighbours
inline std::vector<Point> simplify_collinear(std::vector<Point> v) {
  bool changed = true;
  while (changed && v.size() >= 3) {
    changed = false;
    std::vector<Point> out;
    out.reserve(v.size());
    std::size_t n = v.size();
    for (std::size_t i = 0; i < n; ++i) {
      const Point& prev = v[(i + n - 1) % n];
      const Point& cur = v[i];
      const Point& next = v[(i + 1) % n];
      if (orient(prev, cur, next) == 0.0) {
        changed = true;
        continue;
      }
      out.push_back(cur);
    }
    v = std::move(out);
  }
  return v;
}

// Builds a Polygon from a vertex cycle: forces counter-clockwise order and
// strips collinear vertices. Fewer than 3 surviving vertices -> degenerate.
inline Polygon make_polygon(std::vector<Point> cycle) {
  if (cycle.size() >= 3 && signed_area(cycle) < 0.0) std::reverse(cycle.begin(), cycle.end());
  std::vector<Point> v = cycle.size() >= 3 ? simplify_collinear(std::move(cycle)) : std::move(cycle);
  Polygon p;
  if (v.size() < 3) {
    p.degenerate = true;
    if (v.empty()) fail(errc::degenerate, "empty vertex cycle");
  }
  p.vertices = std::move(v);
  return p;
}

namespace detail {

inline bool on_closed_segment(const Point& a, const Point& b, const Point& p) {
  if (orient(a, b, p) != 0.0) return false;
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y &&
         p.y <= std::max(a.y, b.y);
}

inline bool segments_intersect(const Point& a, const Point& b, const Point& c, const Point& d) {
  double d1 = orient(c, d, a);
  double d2 = orient(c, d, b);
  double d3 = orient(a, b, c);
  double d4 = orient(a, b, d);
  if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0)))
    return true;
  if (d1 == 0 && on_closed_segment(c, d, a)) return true;
  if (d2 == 0 && on_closed_segment(c, d, b)) return true;
  if (d3 == 0 && on_closed_segment(a, b, c)) return true;
  if (d4 == 0 && on_closed_segment(a, b, d)) return true;
  return false;
}

}  // namespace detail

inline bool is_simple(const Polygon& p) {
  const auto& v = p.vertices;
  std::size_t n = v.size();
  if (n < 3) return false;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const Point& a = v[i];
      const Point& b = v[(i + 1) % n];
      const Point& c = v[j];
      const Point& d = v[(j + 1) % n];
      bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
      if (adjacent) {
        // neighbours may only meet at the shared vertex
        const Point& shared = (j == i + 1) ? b : a;
        const Point& afar = (j == i + 1) ? a : b;
        const Point& cfar = (j == i + 1) ? d : c;
        if (orient(afar, shared, cfar) == 0.0 &&
            (detail::on_closed_segment(shared, cfar, afar) ||
             detail::on_closed_segment(shared, afar, cfar)))
          return false;
        continue;
      }
      if (detail::segments_intersect(a, b, c, d)) return false;
    }
  }
  return true;
}

inline bool on_boundary(const Polygon& p, const Point& q) {
  const auto& v = p.vertices;
  std::size_t n = v.size();
  if (n == 1) return v[0] == q;
  for (std::size_t i = 0; i < n; ++i)
    if (detail::on_closed_segment(v[i], v[(i + 1) % n], q)) return true;
  return false;
}

// inside or on the boundary; exact crossing test
inline bool contains(const Polygon& p, const Point& q) {
  if (p.degenerate) return on_boundary(p, q);
  if (on_boundary(p, q)) return true;
  const auto& v = p.vertices;
  std::size_t n = v.size();
  bool in = false;
  for (std::size_t i = 0; i < n; ++i) {
    const Point& a = v[i];
    const Point& b = v[(i + 1) % n];
    if ((a.y > q.y) != (b.y > q.y)) {
      double o = orient(a, b, q);
      if (b.y > a.y ? o > 0 : o < 0) in = !in;
    }
  }
  return in;
}

// rotates the cycle so the lexicographically smallest vertex comes first
inline std::vector<Point> canonical_cycle(std::vector<Point> v) {
  if (v.empty()) return v;
  auto it = std::min_element(v.begin(), v.end(),
                             [](const Point& a, const Point& b) { return lex_less(a, b); });
  std::rotate(v.begin(), it, v.end());
  return v;
}

inline bool same_cycle(const Polygon& a, const Polygon& b) {
  if (a.degenerate != b.degenerate) return false;
  return canonical_cycle(a.vertices) == canonical_cycle(b.vertices);
}

// test/IO guard for the polygon contract
inline void validate_polygon(const Polygon& p) {
  const auto& v = p.vertices;
  if (p.degenerate) {
    if (v.size() < 1 || v.size() > 2) fail(errc::degenerate, "degenerate polygon must hold 1 or 2 vertices");
    return;
  }
  if (v.size() < 3) fail(errc::degenerate, "polygon needs at least 3 vertices");
  if (signed_area(v) <= 0.0) fail(errc::validation, "polygon must be counter-clockwise");
  std::size_t n = v.size();
  for (std::size_t i = 0; i < n; ++i)
    if (orient(v[(i + n - 1) % n], v[i], v[(i + 1) % n]) == 0.0)
      fail(errc::validation, "polygon has three consecutive collinear vertices");
  if (!is_simple(p)) fail(errc::validation, "polygon is self-intersecting");
}

}  // namespace wavehull::geo
