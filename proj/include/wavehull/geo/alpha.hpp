#pragma once

// Alpha shapes over the Delaunay triangulation. A triangle survives carving
// iff its circumradius is below the carving radius; an edge is part of the
// shape iff it bounds exactly one surviving triangle (boundary) or bounds
// none but admits an empty circumscribing disc smaller than the radius
// (dangling). That edge set provably equals the classical definition tested
// by alpha_edges_bruteforce: a disc through both endpoints, empty of other
// points, exists in the radius range the carving cut admits.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "wavehull/error.hpp"
#include "wavehull/geo/convex_hull.hpp"
#include "wavehull/geo/delaunay.hpp"
#include "wavehull/geo/point.hpp"
#include "wavehull/geo/polygon.hpp"

namespace wavehull::geo {

struct AlphaShape {
  double carving_radius = 0.0;
  std::vector<std::pair<int, int>> kept_edges;  // boundary plus dangling, i < j
  std::vector<std::array<int, 3>> kept_triangles;
  int components = 0;  // over all input points; isolated points count singly
  int holes = 0;
};

namespace detail {

struct Dsu {
  std::vector<int> parent;
  explicit Dsu(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

// smallest radius over the empty discs through p and q, given the adjacent
// Delaunay triangles; the empty disc centres form an interval on the
// bisector bounded by the adjacent circumcentres
inline double min_empty_disc_radius(const std::vector<Point>& pts, int pi, int qi,
                                    const std::vector<std::array<int, 3>>& tris,
                                    const std::vector<int>& adjacent) {
  const Point& p = pts[pi];
  const Point& q = pts[qi];
  double ex = q.x - p.x, ey = q.y - p.y;
  double len = std::hypot(ex, ey);
  double nx = -ey / len, ny = ex / len;  // unit left normal of p->q
  double mx = (p.x + q.x) / 2.0, my = (p.y + q.y) / 2.0;
  double half = len / 2.0;

  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  for (int t : adjacent) {
    int w = -1;
    for (int v : tris[t])
      if (v != pi && v != qi) w = v;
    Point cc = circumcenter(pts[tris[t][0]], pts[tris[t][1]], pts[tris[t][2]]);
    double sigma = (cc.x - mx) * nx + (cc.y - my) * ny;
    if (orient(p, q, pts[w]) > 0.0)
      hi = std::min(hi, sigma);
    else
      lo = std::max(lo, sigma);
  }
  double s = std::clamp(0.0, std::min(lo, hi), std::max(lo, hi));
  return std::hypot(s, half);
}

inline std::pair<int, int> undirected(int a, int b) { return {std::min(a, b), std::max(a, b)}; }

}  // namespace detail

// Degenerate inputs (under 3 points, or all collinear) have no triangles;
// their shape is the chain of lexicographically consecutive pairs whose
// diametral disc fits under the radius.
inline AlphaShape alpha_shape(const PointSet& ps, double carving_radius) {
  if (!(carving_radius > 0.0) || !std::isfinite(carving_radius))
    fail(errc::validation, "carving radius must be positive and finite");

  const auto& pts = ps.points();
  int n = static_cast<int>(pts.size());
  AlphaShape out;
  out.carving_radius = carving_radius;

  bool collinear = true;
  for (int i = 2; i < n && collinear; ++i)
    if (orient(pts[0], pts[1], pts[i]) != 0.0) collinear = false;

  detail::Dsu dsu(n);
  std::set<std::pair<int, int>> complex_edges;

  if (n < 3 || collinear) {
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return lex_less(pts[a], pts[b]); });
    for (int i = 0; i + 1 < n; ++i) {
      int a = order[i], b = order[i + 1];
      if (dist(pts[a], pts[b]) / 2.0 < carving_radius) {
        out.kept_edges.push_back(detail::undirected(a, b));
        complex_edges.insert(detail::undirected(a, b));
        dsu.unite(a, b);
      }
    }
    std::sort(out.kept_edges.begin(), out.kept_edges.end());
  } else {
    Delaunay dt = delaunay_triangulate(ps);

    std::vector<bool> kept(dt.triangles.size(), false);
    for (std::size_t t = 0; t < dt.triangles.size(); ++t) {
      const auto& v = dt.triangles[t];
      kept[t] = circumradius(pts[v[0]], pts[v[1]], pts[v[2]]) < carving_radius;
    }

    std::map<std::pair<int, int>, std::vector<int>> edge_tris;
    for (std::size_t t = 0; t < dt.triangles.size(); ++t) {
      const auto& v = dt.triangles[t];
      for (int e = 0; e < 3; ++e)
        edge_tris[detail::undirected(v[e], v[(e + 1) % 3])].push_back(static_cast<int>(t));
    }

    for (const auto& [edge, adj] : edge_tris) {
      int kept_count = 0;
      for (int t : adj)
        if (kept[t]) ++kept_count;
      bool boundary = kept_count == 1;
      bool dangling =
          kept_count == 0 &&
          detail::min_empty_disc_radius(pts, edge.first, edge.second, dt.triangles, adj) <
              carving_radius;
      if (boundary || dangling) out.kept_edges.push_back(edge);
      if (boundary || dangling || kept_count > 0) {
        complex_edges.insert(edge);
        dsu.unite(edge.first, edge.second);
      }
    }

    for (std::size_t t = 0; t < dt.triangles.size(); ++t)
      if (kept[t]) out.kept_triangles.push_back(dt.triangles[t]);
  }

  std::set<int> roots;
  for (int i = 0; i < n; ++i) roots.insert(dsu.find(i));
  out.components = static_cast<int>(roots.size());
  out.holes = out.components + static_cast<int>(complex_edges.size()) - n -
              static_cast<int>(out.kept_triangles.size());
  return out;
}

// O(n^3) oracle against the empty-disc definition, with no triangulation
// involved. Centres of discs through p and q live on the bisector; scanning
// every other point yields the offset interval [lo, hi] of empty discs, and
// the achievable empty radii are then [rmin, rmax]. A pair is an alpha edge
// iff rmin < r <= rmax, which mirrors the strict circumradius cut used for
// carving.
inline std::vector<std::pair<int, int>> alpha_edges_bruteforce(const PointSet& ps, double r) {
  if (!(r > 0.0) || !std::isfinite(r)) fail(errc::validation, "carving radius must be positive and finite");
  const auto& pts = ps.points();
  int n = static_cast<int>(pts.size());
  if (n > 64) fail(errc::size_limit, "brute-force alpha edges limited to 64 points, got " + std::to_string(n));

  const double inf = std::numeric_limits<double>::infinity();
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const Point& p = pts[i];
      const Point& q = pts[j];
      double len = dist(p, q);
      double mx = (p.x + q.x) / 2.0, my = (p.y + q.y) / 2.0;
      double nx = -(q.y - p.y) / len, ny = (q.x - p.x) / len;
      double lo = -inf, hi = inf;
      bool blocked = false;
      for (int k = 0; k < n && !blocked; ++k) {
        if (k == i || k == j) continue;
        const Point& w = pts[k];
        double o = orient(p, q, w);
        if (o == 0.0) {
          // a point on the open segment sits inside every disc through p,q
          blocked = strictly_between(p, q, w);
          continue;
        }
        Point cc = circumcenter(p, q, w);
        double sigma = (cc.x - mx) * nx + (cc.y - my) * ny;
        if (o > 0.0)
          hi = std::min(hi, sigma);
        else
          lo = std::max(lo, sigma);
      }
      if (blocked || lo > hi) continue;
      double rmin = std::hypot(std::clamp(0.0, lo, hi), len / 2.0);
      double rmax = std::max(std::hypot(lo, len / 2.0), std::hypot(hi, len / 2.0));
      if (rmin < r && r <= rmax) out.push_back({i, j});
    }
  }
  return out;
}

// Outer boundary of the carved shape as a simple counter-clockwise polygon.
// The shape must be one connected piece covering every input point; holes are
// filled by construction since only the outer cycle is returned.
inline Polygon concave_hull(const PointSet& ps, double carving_radius) {
  if (!(carving_radius > 0.0) || !std::isfinite(carving_radius))
    fail(errc::validation, "carving radius must be positive and finite");
  // Radii from twice the diameter up mean the infinite-alpha regime. Boundary
  // slivers can have arbitrarily large circumradii, so the carve itself never
  // converges; the limit shape is the convex hull by definition.
  if (carving_radius >= 2.0 * ps.diameter()) return convex_hull_jarvis(ps);

  AlphaShape shape = alpha_shape(ps, carving_radius);
  const auto& pts = ps.points();

  if (shape.kept_triangles.empty())
    fail(errc::degenerate,
         "no triangle survives carving radius " + std::to_string(carving_radius) +
             "; retry with a larger radius");
  if (shape.components > 1)
    fail(errc::disconnected_shape,
         "alpha shape splits the points across " + std::to_string(shape.components) +
             " components; retry with a larger carving radius");

  // directed boundary edges keep the surviving region on their left
  std::set<std::pair<int, int>> directed;
  for (const auto& t : shape.kept_triangles)
    for (int e = 0; e < 3; ++e) directed.insert({t[e], t[(e + 1) % 3]});

  std::map<int, int> succ;
  for (const auto& [a, b] : directed) {
    if (directed.count({b, a})) continue;
    if (succ.count(a))
      fail(errc::disconnected_shape,
           "shape boundary pinches at a vertex; retry with a larger carving radius");
    succ[a] = b;
  }

  std::vector<std::vector<int>> cycles;
  std::set<int> seen;
  for (const auto& [start, ignored] : succ) {
    if (seen.count(start)) continue;
    std::vector<int> cycle;
    int cur = start;
    do {
      cycle.push_back(cur);
      seen.insert(cur);
      cur = succ.at(cur);
    } while (cur != start);
    cycles.push_back(std::move(cycle));
  }

  std::vector<Point> outer;
  double best_area = 0.0;
  int positive = 0;
  for (const auto& cycle : cycles) {
    std::vector<Point> v;
    v.reserve(cycle.size());
    for (int i : cycle) v.push_back(pts[i]);
    double a = signed_area(v);
    if (a > 0.0) {
      ++positive;
      if (a > best_area) {
        best_area = a;
        outer = std::move(v);
      }
    }
  }
  if (positive != 1)
    fail(errc::disconnected_shape,
         "carved shape is not a single filled region; retry with a larger carving radius");

  Polygon hull = make_polygon(std::move(outer));
  if (hull.degenerate) fail(errc::degenerate, "carved shape collapsed to a degenerate outline");
  for (std::size_t i = 0; i < pts.size(); ++i)
    if (!contains(hull, pts[i]))
      fail(errc::disconnected_shape, "point " + std::to_string(i) +
                                         " lies outside the carved shape; retry with a larger carving radius");
  return hull;
}

}  // namespace wavehull::geo
