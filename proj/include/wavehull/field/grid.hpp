#pragma once

// Uniform simulation grid. Cell (row, col) has its center at world
// coordinates origin + (col*dx, row*dx), so row growth is world +y and the
// stored fields are row-major with no flipping anywhere.

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "wavehull/error.hpp"
#include "wavehull/geo/point.hpp"

namespace wavehull::field {

struct Grid {
  int width = 0;   // columns
  int height = 0;  // rows
  double dx = 0.25;
  geo::Point origin{0.0, 0.0};  // world position of cell (0,0) center

  std::size_t cells() const { return (std::size_t)width * (std::size_t)height; }
  geo::Point center(int row, int col) const {
    return {origin.x + col * dx, origin.y + row * dx};
  }
  // span between opposite corner cell centers
  double diagonal() const { return std::hypot((width - 1) * dx, (height - 1) * dx); }
  bool in_bounds(int row, int col) const {
    return row >= 0 && row < height && col >= 0 && col < width;
  }
  int col_of(double x) const { return (int)std::lround((x - origin.x) / dx); }
  int row_of(double y) const { return (int)std::lround((y - origin.y) / dx); }
};

inline void validate_grid(const Grid& g) {
  if (g.width < 32 || g.height < 32)
    fail(errc::validation, "grid must be at least 32x32 cells, got " +
                               std::to_string(g.width) + "x" + std::to_string(g.height));
  if (!(g.dx > 0.0) || !std::isfinite(g.dx))
    fail(errc::validation, "grid spacing must be positive and finite");
  if (!std::isfinite(g.origin.x) || !std::isfinite(g.origin.y))
    fail(errc::validation, "grid origin must be finite");
}

struct ScalarField {
  Grid grid;
  std::vector<double> values;  // row-major, height*width

  ScalarField() = default;
  explicit ScalarField(const Grid& g, double init = 0.0)
      : grid(g), values(g.cells(), init) {}
  double& at(int row, int col) { return values[(std::size_t)row * grid.width + col]; }
  double at(int row, int col) const { return values[(std::size_t)row * grid.width + col]; }
};

struct ObstacleMask {
  Grid grid;
  std::vector<std::uint8_t> blocked;  // row-major, 0 or 1

  ObstacleMask() = default;
  explicit ObstacleMask(const Grid& g) : grid(g), blocked(g.cells(), 0) {}
  bool at(int row, int col) const {
    return blocked[(std::size_t)row * grid.width + col] != 0;
  }
  void set(int row, int col, bool b) {
    blocked[(std::size_t)row * grid.width + col] = b ? 1 : 0;
  }
  std::size_t count() const {
    std::size_t n = 0;
    for (auto b : blocked) n += b;
    return n;
  }
};

}  // namespace wavehull::field
