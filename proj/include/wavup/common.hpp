#pragma once

#include <stdexcept>
#include <string>

namespace wavup {

// Usage-class failure (bad argument, bad config).  The C API and the CLI map
// these to exit code 2.
inline void check_arg(bool ok, const std::string& msg) {
  if (!ok) throw std::invalid_argument(msg);
}

// Runtime-class failure (solver abort, non-finite state, I/O).  Maps to exit
// code 1.
inline void check_run(bool ok, const std::string& msg) {
  if (!ok) throw std::runtime_error(msg);
}

}  // namespace wavup
