#pragma once

// Minimal JSON object writer for manifests and metric dumps. Output is one
// line, keys sorted lexicographically, reals printed through %.9g so runs
// compare byte for byte.

#include <cstdio>
#include <map>
#include <string>
#include <variant>
#include <vector>

namespace wavehull::io {

struct JsonValue;
using JsonObject = std::map<std::string, JsonValue>;

struct JsonValue {
  std::variant<std::nullptr_t, bool, long long, double, std::string,
               std::vector<std::string>>
      v;

  JsonValue() : v(nullptr) {}
  JsonValue(std::nullptr_t) : v(nullptr) {}
  JsonValue(bool b) : v(b) {}
  JsonValue(int i) : v(static_cast<long long>(i)) {}
  JsonValue(long long i) : v(i) {}
  JsonValue(double d) : v(d) {}
  JsonValue(const char* s) : v(std::string(s)) {}
  JsonValue(std::string s) : v(std::move(s)) {}
  JsonValue(std::vector<std::string> a) : v(std::move(a)) {}
};

namespace detail {

inline std::string json_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out;
}

inline std::string json_real(double d) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", d);
  // bare "inf"/"nan" would not be JSON; the writer never receives them from
  // validated configs, but keep the output well formed regardless
  std::string s = buf;
  if (s.find_first_of("0123456789") == std::string::npos || s.find("inf") != std::string::npos ||
      s.find("nan") != std::string::npos)
    return "null";
  return s;
}

}  // namespace detail

inline std::string json_line(const JsonObject& obj) {
  std::string out = "{";
  bool first = true;
  for (const auto& [key, val] : obj) {
    if (!first) out += ",";
    first = false;
    out += "\"" + detail::json_escape(key) + "\":";
    if (std::holds_alternative<std::nullptr_t>(val.v)) {
      out += "null";
    } else if (std::holds_alternative<bool>(val.v)) {
      out += std::get<bool>(val.v) ? "true" : "false";
    } else if (std::holds_alternative<long long>(val.v)) {
      out += std::to_string(std::get<long long>(val.v));
    } else if (std::holds_alternative<double>(val.v)) {
      out += detail::json_real(std::get<double>(val.v));
    } else if (std::holds_alternative<std::string>(val.v)) {
      out += "\"" + detail::json_escape(std::get<std::string>(val.v)) + "\"";
    } else {
      out += "[";
      const auto& arr = std::get<std::vector<std::string>>(val.v);
      for (std::size_t i = 0; i < arr.size(); ++i) {
        if (i) out += ",";
        out += "\"" + detail::json_escape(arr[i]) + "\"";
      }
      out += "]";
    }
  }
  out += "}\n";
  return out;
}

}  // namespace wavehull::io
