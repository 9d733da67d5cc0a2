#pragma once

// Text file formats: point sets as "x,y" CSV lines and polygons as the same
// with a "polygon,ccw" header. '#' lines are comments, encoding is plain
// ASCII with LF endings, and writes go through a temp file then rename.

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "wavehull/error.hpp"
#include "wavehull/geo/point.hpp"
#include "wavehull/geo/polygon.hpp"

namespace wavehull::io {

inline void write_file_atomic(const std::string& path, const std::string& content) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) fail(errc::io, "cannot open '" + tmp + "' for writing");
    out << content;
    if (!out) fail(errc::io, "write to '" + tmp + "' failed");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) fail(errc::io, "cannot move '" + tmp + "' to '" + path + "': " + ec.message());
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(errc::io, "cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

namespace detail {

inline std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// full-line "x,y" parse; returns false on any malformed piece
inline bool parse_xy(const std::string& line, double& x, double& y) {
  std::size_t comma = line.find(',');
  if (comma == std::string::npos) return false;
  std::string xs = trim(line.substr(0, comma));
  std::string ys = trim(line.substr(comma + 1));
  if (xs.empty() || ys.empty() || ys.find(',') != std::string::npos) return false;
  char* end = nullptr;
  errno = 0;
  x = std::strtod(xs.c_str(), &end);
  if (errno != 0 || end != xs.c_str() + xs.size()) return false;
  errno = 0;
  y = std::strtod(ys.c_str(), &end);
  if (errno != 0 || end != ys.c_str() + ys.size()) return false;
  return true;
}

inline std::string fmt_coord(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace detail

inline geo::PointSet read_points(const std::string& path) {
  std::istringstream in(read_file(path));
  std::vector<geo::Point> pts;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string body = detail::trim(line);
    if (body.empty() || body[0] == '#') continue;
    double x = 0, y = 0;
    if (!detail::parse_xy(body, x, y))
      fail(errc::parse,
           path + ": line " + std::to_string(line_no) + ": expected 'x,y', got '" + body + "'");
    pts.push_back({x, y});
  }
  if (pts.empty()) fail(errc::parse, path + ": no points found");
  return geo::PointSet(std::move(pts));
}

inline void write_points(const std::string& path, const geo::PointSet& ps,
                         const std::string& comment = "") {
  std::string out;
  if (!comment.empty()) out += "# " + comment + "\n";
  for (std::size_t i = 0; i < ps.size(); ++i)
    out += detail::fmt_coord(ps[i].x) + "," + detail::fmt_coord(ps[i].y) + "\n";
  write_file_atomic(path, out);
}

inline geo::Polygon read_polygon(const std::string& path) {
  std::istringstream in(read_file(path));
  std::vector<geo::Point> verts;
  std::string line;
  int line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    std::string body = detail::trim(line);
    if (body.empty() || body[0] == '#') continue;
    if (!header_seen) {
      if (body != "polygon,ccw")
        fail(errc::parse, path + ": line " + std::to_string(line_no) +
                              ": expected header 'polygon,ccw', got '" + body + "'");
      header_seen = true;
      continue;
    }
    double x = 0, y = 0;
    if (!detail::parse_xy(body, x, y))
      fail(errc::parse,
           path + ": line " + std::to_string(line_no) + ": expected 'x,y', got '" + body + "'");
    verts.push_back({x, y});
  }
  if (!header_seen) fail(errc::parse, path + ": missing 'polygon,ccw' header");
  if (verts.size() < 3)
    fail(errc::parse, path + ": polygon needs at least 3 vertices, got " +
                          std::to_string(verts.size()));
  geo::Polygon poly{std::move(verts)};
  geo::validate_polygon(poly);
  return poly;
}

inline void write_polygon(const std::string& path, const geo::Polygon& poly) {
  std::string out = "polygon,ccw\n";
  for (const auto& v : poly.vertices)
    out += detail::fmt_coord(v.x) + "," + detail::fmt_coord(v.y) + "\n";
  write_file_atomic(path, out);
}

}  // namespace wavehull::io
