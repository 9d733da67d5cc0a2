#pragma once

// Incremental Bowyer-Watson with one symbolic ghost vertex covering the
// outside of the hull. A ghost triangle (a,b,G) stores the finite edge (a,b)
// reversed relative to hull order, so "p in its circumdisk" means p strictly
// left of a->b, or on the open segment. With exact predicates the cavity of
// each insertion is exactly the set of triangles whose open circumdisk holds
// the point, and it is face-connected; re-triangulating its boundary fan
// keeps the structure Delaunay. Point location is a full scan: quadratic
// overall, which is fine at the point counts this library targets.

#include <array>
#include <cstddef>
#include <set>
#include <utility>
#include <vector>

#include "wavehull/error.hpp"
#include "wavehull/geo/point.hpp"

namespace wavehull::geo {

struct Delaunay {
  // counter-clockwise vertex index triples
  std::vector<std::array<int, 3>> triangles;
};

namespace detail {

inline constexpr int kGhost = -1;

struct BwTri {
  std::array<int, 3> v;  // ghost, if present, sits in slot 2
  bool alive = true;
};

inline bool bw_contains(const std::vector<Point>& pts, const BwTri& t, const Point& p) {
  if (t.v[2] != kGhost) {
    const Point& a = pts[t.v[0]];
    const Point& b = pts[t.v[1]];
    const Point& c = pts[t.v[2]];
    return in_circle(a, b, c, p) > 0.0;
  }
  const Point& a = pts[t.v[0]];
  const Point& b = pts[t.v[1]];
  double o = orient(a, b, p);
  if (o > 0.0) return true;
  return o == 0.0 && strictly_between(a, b, p);
}

inline std::array<int, 3> bw_canonical(int a, int b, int c) {
  if (a == kGhost) return {b, c, a};
  if (b == kGhost) return {c, a, b};
  return {a, b, c};
}

}  // namespace detail

// Requires three non-collinear points somewhere in the set.
inline Delaunay delaunay_triangulate(const PointSet& ps) {
  const auto& pts = ps.points();
  int n = static_cast<int>(pts.size());
  if (n < 3) fail(errc::degenerate, "triangulation needs at least 3 points");

  int k = -1;
  double o_seed = 0.0;
  for (int i = 2; i < n; ++i) {
    o_seed = orient(pts[0], pts[1], pts[i]);
    if (o_seed != 0.0) {
      k = i;
      break;
    }
  }
  if (k < 0) fail(errc::degenerate, "all points are collinear");

  int s0 = 0, s1 = 1, s2 = k;
  if (o_seed < 0.0) std::swap(s1, s2);

  using detail::BwTri;
  using detail::kGhost;
  std::vector<BwTri> tris;
  tris.push_back({{s0, s1, s2}});
  tris.push_back({{s1, s0, kGhost}});
  tris.push_back({{s2, s1, kGhost}});
  tris.push_back({{s0, s2, kGhost}});

  for (int i = 0; i < n; ++i) {
    if (i == s0 || i == s1 || i == s2) continue;
    const Point& p = pts[i];

    std::vector<std::size_t> cavity;
    for (std::size_t t = 0; t < tris.size(); ++t)
      if (tris[t].alive && detail::bw_contains(pts, tris[t], p)) cavity.push_back(t);
    if (cavity.empty()) fail(errc::degenerate, "point fell outside every circumdisk");

    std::set<std::pair<int, int>> cavity_edges;
    for (std::size_t t : cavity) {
      const auto& v = tris[t].v;
      cavity_edges.insert({v[0], v[1]});
      cavity_edges.insert({v[1], v[2]});
      cavity_edges.insert({v[2], v[0]});
    }
    for (std::size_t t : cavity) tris[t].alive = false;
    for (const auto& [a, b] : cavity_edges) {
      if (cavity_edges.count({b, a})) continue;  // interior to the cavity
      tris.push_back({detail::bw_canonical(a, b, i)});
    }
  }

  Delaunay out;
  for (const auto& t : tris)
    if (t.alive && t.v[2] != kGhost) out.triangles.push_back(t.v);
  return out;
}

// circumcircle in plain doubles; near-degenerate triangles blow up to huge
// radii, which is the behaviour the carving test wants
inline Point circumcenter(const Point& a, const Point& b, const Point& c) {
  double d = 2.0 * (a.x * (b.y - c.y) + b.x * (c.y - a.y) + c.x * (a.y - b.y));
  double aw = a.x * a.x + a.y * a.y;
  double bw = b.x * b.x + b.y * b.y;
  double cw = c.x * c.x + c.y * c.y;
  double ux = (aw * (b.y - c.y) + bw * (c.y - a.y) + cw * (a.y - b.y)) / d;
  double uy = (aw * (c.x - b.x) + bw * (a.x - c.x) + cw * (b.x - a.x)) / d;
  return {ux, uy};
}

inline double circumradius(const Point& a, const Point& b, const Point& c) {
  return dist(circumcenter(a, b, c), a);
}

}  // namespace wavehull::geo
