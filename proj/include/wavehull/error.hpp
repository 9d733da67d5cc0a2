#pragma once

#include <stdexcept>
#include <string>

namespace wavehull {

// Error categories map onto process exit codes in the CLI:
//   validation/parse -> 3, degenerate/disconnected -> 2, everything else -> 1.
enum class errc {
  validation,
  parse,
  io,
  degenerate,
  disconnected_shape,
  numeric_blowup,
  empty_trail,
  size_limit,
};

class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  errc code() const { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw Error(code, what); }

}  // namespace wavehull
