#pragma once

// Binary PGM (P5, maxval 255) renders. Grid row 0 sits at world-minimum y,
// so rows are flipped on write to keep +y pointing up in the image.

#include <algorithm>
#include <cmath>
#include <string>

#include "wavehull/field/grid.hpp"
#include "wavehull/io/files.hpp"
#include "wavehull/morph/morph.hpp"

namespace wavehull::io {

namespace detail {

inline std::string pgm_header(const field::Grid& g) {
  return "P5\n" + std::to_string(g.width) + " " + std::to_string(g.height) + "\n255\n";
}

}  // namespace detail

// values clamp to [0,1] then scale to [0,255]
inline void write_pgm(const std::string& path, const field::ScalarField& f) {
  std::string out = detail::pgm_header(f.grid);
  out.reserve(out.size() + f.grid.cells());
  for (int row = f.grid.height - 1; row >= 0; --row)
    for (int col = 0; col < f.grid.width; ++col) {
      double v = f.at(row, col);
      if (!(v >= 0.0)) v = 0.0;
      if (v > 1.0) v = 1.0;
      out += static_cast<char>(std::lround(v * 255.0));
    }
  write_file_atomic(path, out);
}

// set cells render white, clear cells black
inline void write_pgm(const std::string& path, const morph::BinaryImage& img) {
  std::string out = detail::pgm_header(img.grid);
  out.reserve(out.size() + img.grid.cells());
  for (int row = img.grid.height - 1; row >= 0; --row)
    for (int col = 0; col < img.grid.width; ++col)
      out += static_cast<char>(img.at(row, col) ? 255 : 0);
  write_file_atomic(path, out);
}

}  // namespace wavehull::io
