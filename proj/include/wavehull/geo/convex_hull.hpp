#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "wavehull/error.hpp"
#include "wavehull/geo/point.hpp"
#include "wavehull/geo/polygon.hpp"

namespace wavehull::geo {

// Gift wrapping with exact orientation. Collinear candidates resolve to the
// farthest point, so collinear boundary points are never emitted and the
// result is the canonical minimal vertex cycle, counter-clockwise.
inline Polygon convex_hull_jarvis(const PointSet& ps) {
  const auto& pts = ps.points();
  std::size_t n = pts.size();
  if (n == 1) return Polygon{{pts[0]}, true};

  std::size_t start = 0;
  for (std::size_t i = 1; i < n; ++i)
    if (lex_less(pts[i], pts[start])) start = i;

  std::vector<Point> cycle;
  std::size_t cur = start;
  do {
    cycle.push_back(pts[cur]);
    std::size_t cand = (cur == 0) ? 1 : 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == cur || i == cand) continue;
      double o = orient(pts[cur], pts[cand], pts[i]);
      if (o < 0.0 || (o == 0.0 && dist2(pts[cur], pts[i]) > dist2(pts[cur], pts[cand]))) cand = i;
    }
    cur = cand;
    if (cycle.size() > n) fail(errc::degenerate, "gift wrapping failed to close");
  } while (cur != start);

  if (cycle.size() < 3) return Polygon{cycle, true};
  return Polygon{cycle, false};
}

// O(n^3) oracle: a directed pair (p,q) is a hull edge iff every other point
// lies strictly left of it or strictly inside the segment.
inline Polygon convex_hull_bruteforce(const PointSet& ps) {
  const auto& pts = ps.points();
  std::size_t n = pts.size();
  if (n > 512) fail(errc::size_limit, "brute-force hull limited to 512 points, got " + std::to_string(n));
  if (n == 1) return Polygon{{pts[0]}, true};

  std::map<std::size_t, std::size_t> next;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      bool edge = true;
      for (std::size_t k = 0; k < n && edge; ++k) {
        if (k == i || k == j) continue;
        double o = orient(pts[i], pts[j], pts[k]);
        if (o < 0.0 || (o == 0.0 && !strictly_between(pts[i], pts[j], pts[k]))) edge = false;
      }
      if (edge) next[i] = j;
    }
  }
  if (next.empty()) fail(errc::degenerate, "no hull edge found");

  std::size_t start = next.begin()->first;
  for (const auto& [from, to] : next)
    if (lex_less(pts[from], pts[start])) start = from;

  std::vector<Point> cycle;
  std::size_t cur = start;
  do {
    cycle.push_back(pts[cur]);
    auto it = next.find(cur);
    if (it == next.end() || cycle.size() > n) fail(errc::degenerate, "hull edge chain is broken");
    cur = it->second;
  } while (cur != start);

  if (cycle.size() < 3) return Polygon{cycle, true};
  return Polygon{cycle, false};
}

}  // namespace wavehull::geo
