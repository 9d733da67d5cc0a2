#pragma once

// Binary-image post-processing for the simulation trail: erosion, largest
// component with hole filling, outer contour extraction, and topology
// preserving thinning into a tube network. Foreground is 8-connected,
// background 4-connected throughout.

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "wavehull/error.hpp"
#include "wavehull/field/grid.hpp"
#include "wavehull/geo/polygon.hpp"

namespace wavehull::morph {

struct BinaryImage {
  field::Grid grid;
  std::vector<std::uint8_t> bits;  // row-major, 0 or 1

  BinaryImage() = default;
  explicit BinaryImage(const field::Grid& g) : grid(g), bits(g.cells(), 0) {}
  bool at(int row, int col) const {
    return grid.in_bounds(row, col) && bits[(std::size_t)row * grid.width + col] != 0;
  }
  void set(int row, int col, bool b) {
    bits[(std::size_t)row * grid.width + col] = b ? 1 : 0;
  }
  std::size_t count() const {
    std::size_t n = 0;
    for (auto b : bits) n += b;
    return n;
  }
};

struct TubeNetwork {
  BinaryImage skeleton;
  std::vector<std::pair<int, int>> junctions;  // (row, col), >=3 skeleton neighbors
  int cycles = 0;
};

// a set cell survives iff all 4-neighbors are set; off-grid counts as unset
inline BinaryImage erode(const BinaryImage& img) {
  BinaryImage out(img.grid);
  for (int r = 0; r < img.grid.height; ++r)
    for (int c = 0; c < img.grid.width; ++c)
      out.set(r, c, img.at(r, c) && img.at(r - 1, c) && img.at(r + 1, c) &&
                        img.at(r, c - 1) && img.at(r, c + 1));
  return out;
}

namespace detail {

// ring neighbors in cyclic order starting east; even indices are 4-neighbors
inline constexpr int kRing[8][2] = {{0, 1},  {1, 1},   {1, 0},  {1, -1},
                                    {0, -1}, {-1, -1}, {-1, 0}, {-1, 1}};

// 8-component labels of set cells, 0 for unset
inline std::vector<int> label8(const BinaryImage& img, int& n_labels) {
  const int w = img.grid.width, h = img.grid.height;
  std::vector<int> label((std::size_t)w * h, 0);
  n_labels = 0;
  std::vector<std::pair<int, int>> stack;
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      if (!img.at(r, c) || label[(std::size_t)r * w + c] != 0) continue;
      ++n_labels;
      stack.push_back({r, c});
      label[(std::size_t)r * w + c] = n_labels;
      while (!stack.empty()) {
        auto [cr, cc] = stack.back();
        stack.pop_back();
        for (const auto& d : kRing) {
          int nr = cr + d[0], nc = cc + d[1];
          if (img.at(nr, nc) && label[(std::size_t)nr * w + nc] == 0) {
            label[(std::size_t)nr * w + nc] = n_labels;
            stack.push_back({nr, nc});
          }
        }
      }
    }
  }
  return label;
}

}  // namespace detail

// most-cells 8-connected component (first in raster order on ties), with its
// interior holes filled by flooding background from the image border
inline BinaryImage largest_component_filled(const BinaryImage& img) {
  const int w = img.grid.width, h = img.grid.height;
  int n_labels = 0;
  std::vector<int> label = detail::label8(img, n_labels);
  if (n_labels == 0) fail(errc::empty_trail, "trail image is empty");

  std::vector<std::size_t> sizes(n_labels + 1, 0);
  for (int v : label)
    if (v > 0) ++sizes[v];
  int best = 1;
  for (int l = 2; l <= n_labels; ++l)
    if (sizes[l] > sizes[best]) best = l;

  // background flood over everything that is not the chosen component
  BinaryImage outside(img.grid);
  std::vector<std::pair<int, int>> stack;
  auto try_seed = [&](int r, int c) {
    if (r < 0 || r >= h || c < 0 || c >= w) return;
    if (label[(std::size_t)r * w + c] == best || outside.at(r, c)) return;
    outside.set(r, c, true);
    stack.push_back({r, c});
  };
  for (int r = 0; r < h; ++r) {
    try_seed(r, 0);
    try_seed(r, w - 1);
  }
  for (int c = 0; c < w; ++c) {
    try_seed(0, c);
    try_seed(h - 1, c);
  }
  while (!stack.empty()) {
    auto [cr, cc] = stack.back();
    stack.pop_back();
    try_seed(cr - 1, cc);
    try_seed(cr + 1, cc);
    try_seed(cr, cc - 1);
    try_seed(cr, cc + 1);
  }

  BinaryImage filled(img.grid);
  for (int r = 0; r < h; ++r)
    for (int c = 0; c < w; ++c) filled.set(r, c, !outside.at(r, c));
  return filled;
}

// true iff every data point rounds to a cell of the filled largest component
inline bool enclosure_check(const BinaryImage& trail, const geo::PointSet& ps) {
  if (trail.count() == 0) return false;
  BinaryImage filled = largest_component_filled(trail);
  for (std::size_t i = 0; i < ps.size(); ++i) {
    int r = trail.grid.row_of(ps[i].y);
    int c = trail.grid.col_of(ps[i].x);
    if (!filled.at(r, c)) return false;
  }
  return true;
}

// Outer boundary of the filled largest component as a simple CCW polygon.
// Contour vertices sit at midpoints of cell edges separating set from unset
// cells; diagonal saddles are routed to keep 8-connected foreground joined,
// which also keeps the two crossing strands from intersecting.
inline geo::Polygon outer_contour(const BinaryImage& trail) {
  BinaryImage filled = largest_component_filled(trail);
  const field::Grid& g = filled.grid;

  // segment endpoints live on the half-integer lattice; key = (2*row, 2*col)
  auto key = [](int r2, int c2) { return ((std::int64_t)r2 << 32) | (std::uint32_t)c2; };
  std::vector<std::pair<std::int64_t, std::int64_t>> segs;

  // march every 2x2 cell block around corner (r, c) .. (r+1, c+1) offsets:
  // corner lattice point is at cell-corner (r + 1/2, c + 1/2)
  for (int r = -1; r < g.height; ++r) {
    for (int c = -1; c < g.width; ++c) {
      bool sw = filled.at(r, c), se = filled.at(r, c + 1);
      bool nw = filled.at(r + 1, c), ne = filled.at(r + 1, c + 1);
      int pattern = (sw ? 1 : 0) | (se ? 2 : 0) | (nw ? 4 : 0) | (ne ? 8 : 0);
      // midpoints of the four cracks meeting at this corner
      std::int64_t s = key(2 * r, 2 * c + 1);       // between sw and se
      std::int64_t n = key(2 * r + 2, 2 * c + 1);   // between nw and ne
      std::int64_t w_ = key(2 * r + 1, 2 * c);      // between sw and nw
      std::int64_t e = key(2 * r + 1, 2 * c + 2);   // between se and ne
      // directed so the set region stays on the left (CCW outer cycle)
      switch (pattern) {
        case 1: segs.push_back({s, w_}); break;
        case 2: segs.push_back({e, s}); break;
        case 3: segs.push_back({e, w_}); break;
        case 4: segs.push_back({w_, n}); break;
        case 5: segs.push_back({s, n}); break;
        case 6:  // diagonal se/nw: route both strands to keep foreground joined
          segs.push_back({w_, s});
          segs.push_back({e, n});
          break;
        case 7: segs.push_back({e, n}); break;
        case 8: segs.push_back({n, e}); break;
        case 9:  // diagonal sw/ne: route both strands to keep foreground joined
          segs.push_back({n, w_});
          segs.push_back({s, e});
          break;
        case 10: segs.push_back({n, s}); break;
        case 11: segs.push_back({n, w_}); break;
        case 12: segs.push_back({w_, e}); break;
        case 13: segs.push_back({s, e}); break;
        case 14: segs.push_back({w_, s}); break;
        default: break;  // 0 and 15: no boundary here
      }
    }
  }

  // stitch; filling guarantees a single cycle
  std::vector<std::pair<std::int64_t, std::int64_t>> sorted_segs = segs;
  std::sort(sorted_segs.begin(), sorted_segs.end());
  auto next_of = [&](std::int64_t from) -> std::int64_t {
    auto it = std::lower_bound(sorted_segs.begin(), sorted_segs.end(),
                               std::make_pair(from, std::numeric_limits<std::int64_t>::min()));
    if (it == sorted_segs.end() || it->first != from)
      fail(errc::degenerate, "contour tracing lost its path");
    return it->second;
  };

  std::vector<geo::Point> verts;
  std::int64_t start = sorted_segs.front().first;
  std::int64_t cur = start;
  do {
    int r2 = (int)(cur >> 32);
    int c2 = (int)(std::int32_t)(cur & 0xffffffff);
    verts.push_back({g.origin.x + 0.5 * c2 * g.dx, g.origin.y + 0.5 * r2 * g.dx});
    cur = next_of(cur);
    if (verts.size() > sorted_segs.size())
      fail(errc::degenerate, "contour tracing did not close");
  } while (cur != start);

  return geo::make_polygon(std::move(verts));
}

namespace detail {

// Deletability table for sequential thinning. A set cell is simple, hence
// removable, iff its set ring cells form exactly one 8-connected component
// and its unset ring cells form exactly one 4-connected component touching
// a 4-neighbor of the center. Index bit k = ring cell k set. Components are
// taken within the punctured 3x3 block, where two 4-neighbors at right
// angles are 8-adjacent even when the corner between them is unset.
inline const std::array<std::uint8_t, 256>& simple_table() {
  static const std::array<std::uint8_t, 256> table = [] {
    auto components = [](int members, bool four_connected) {
      int parent[8];
      for (int k = 0; k < 8; ++k) parent[k] = k;
      auto find = [&](int k) {
        while (parent[k] != k) k = parent[k] = parent[parent[k]];
        return k;
      };
      for (int a = 0; a < 8; ++a) {
        if (!((members >> a) & 1)) continue;
        for (int b = a + 1; b < 8; ++b) {
          if (!((members >> b) & 1)) continue;
          int dr = kRing[a][0] - kRing[b][0], dc = kRing[a][1] - kRing[b][1];
          bool adj = four_connected ? (std::abs(dr) + std::abs(dc) == 1)
                                    : (std::abs(dr) <= 1 && std::abs(dc) <= 1);
          if (adj) parent[find(a)] = find(b);
        }
      }
      int count = 0, edge_touching = 0;
      for (int k = 0; k < 8; ++k) {
        if (!((members >> k) & 1)) continue;
        if (find(k) == k) ++count;
      }
      for (int k = 0; k < 8; k += 2) {  // even indices are the 4-neighbors
        if (!((members >> k) & 1)) continue;
        bool seen = false;
        for (int j = 0; j < k; j += 2)
          if (((members >> j) & 1) && find(j) == find(k)) seen = true;
        if (!seen) ++edge_touching;
      }
      return std::pair<int, int>{count, edge_touching};
    };
    std::array<std::uint8_t, 256> t{};
    for (int m = 0; m < 256; ++m) {
      auto [fg_comps, fg_edge] = components(m, false);
      auto [bg_comps, bg_edge] = components(~m & 0xff, true);
      (void)fg_edge;
      (void)bg_comps;
      t[m] = (fg_comps == 1 && bg_edge == 1) ? 1 : 0;
    }
    return t;
  }();
  return table;
}

inline int ring_mask(const BinaryImage& img, int r, int c) {
  int m = 0;
  for (int k = 0; k < 8; ++k)
    if (img.at(r + kRing[k][0], c + kRing[k][1])) m |= 1 << k;
  return m;
}

}  // namespace detail

// Sequential deletion of simple non-endpoint cells, ordered by distance to
// the background so the shape peels evenly from all sides and the skeleton
// settles on the medial ridge. Every deletion is individually topology
// preserving, so component and hole structure of the input survive.
inline TubeNetwork thin_to_network(const BinaryImage& trail) {
  if (trail.count() == 0) fail(errc::empty_trail, "trail image is empty");
  TubeNetwork net;
  net.skeleton = trail;
  BinaryImage& sk = net.skeleton;
  const auto& table = detail::simple_table();
  const int w = sk.grid.width, h = sk.grid.height;

  // 4-distance to the nearest unset cell; off-grid counts as unset
  std::vector<int> dist((std::size_t)w * h, 0);
  std::vector<std::pair<int, int>> frontier, next;
  for (int r = 0; r < h; ++r)
    for (int c = 0; c < w; ++c) {
      bool border_bg = !sk.at(r - 1, c) || !sk.at(r + 1, c) || !sk.at(r, c - 1) ||
                       !sk.at(r, c + 1);
      if (sk.at(r, c) && border_bg) {
        dist[(std::size_t)r * w + c] = 1;
        frontier.push_back({r, c});
      }
    }
  int max_dist = 1;
  while (!frontier.empty()) {
    next.clear();
    for (auto [r, c] : frontier) {
      const int d4[4][2] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
      for (const auto& dd : d4) {
        int nr = r + dd[0], nc = c + dd[1];
        if (!sk.at(nr, nc)) continue;
        std::size_t i = (std::size_t)nr * w + nc;
        if (dist[i] == 0) {
          dist[i] = dist[(std::size_t)r * w + c] + 1;
          max_dist = dist[i];
          next.push_back({nr, nc});
        }
      }
    }
    frontier.swap(next);
  }

  bool changed = true;
  while (changed) {
    changed = false;
    for (int layer = 1; layer <= max_dist; ++layer) {
      bool layer_changed = true;
      while (layer_changed) {
        layer_changed = false;
        for (int r = 0; r < h; ++r) {
          for (int c = 0; c < w; ++c) {
            if (!sk.at(r, c) || dist[(std::size_t)r * w + c] != layer) continue;
            int m = detail::ring_mask(sk, r, c);
            if (__builtin_popcount((unsigned)m) <= 1) continue;  // endpoint
            if (table[m]) {
              sk.set(r, c, false);
              layer_changed = true;
              changed = true;
            }
          }
        }
      }
    }
  }

  // rasterization leaves one or two cell twigs at sharp tips; removing a
  // twig that ends at a branching cell never changes components or holes
  auto degree = [&](int r, int c) {
    return __builtin_popcount((unsigned)detail::ring_mask(sk, r, c));
  };
  auto sole_neighbor = [&](int r, int c, int skip_r, int skip_c) {
    for (const auto& d : detail::kRing) {
      int nr = r + d[0], nc = c + d[1];
      if ((nr != skip_r || nc != skip_c) && sk.at(nr, nc)) return std::pair<int, int>{nr, nc};
    }
    return std::pair<int, int>{-1, -1};
  };
  bool pruned = true;
  while (pruned) {
    pruned = false;
    for (int r = 0; r < h; ++r) {
      for (int c = 0; c < w; ++c) {
        if (!sk.at(r, c) || degree(r, c) != 1) continue;
        auto [ar, ac] = sole_neighbor(r, c, r, c);
        if (degree(ar, ac) >= 3) {
          sk.set(r, c, false);
          pruned = true;
        } else if (degree(ar, ac) == 2) {
          auto [br, bc] = sole_neighbor(ar, ac, r, c);
          if (degree(br, bc) >= 3) {
            sk.set(r, c, false);
            sk.set(ar, ac, false);
            pruned = true;
          }
        }
      }
    }
  }

  std::int64_t verts = 0, edges = 0;
  for (int r = 0; r < sk.grid.height; ++r) {
    for (int c = 0; c < sk.grid.width; ++c) {
      if (!sk.at(r, c)) continue;
      ++verts;
      int m = detail::ring_mask(sk, r, c);
      int neighbors = __builtin_popcount((unsigned)m);
      edges += neighbors;  // each adjacency counted from both ends
      if (neighbors >= 3) net.junctions.push_back({r, c});
    }
  }
  edges /= 2;
  int comps = 0;
  detail::label8(sk, comps);
  net.cycles = (int)(edges - verts + comps);
  return net;
}

}  // namespace wavehull::morph
