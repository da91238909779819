#pragma once

#include <stdexcept>
#include <string>

namespace evstab {

// Error taxonomy; the C boundary and the CLI map these 1:1 onto exit codes.
enum ErrorCode : int {
  EV_OK = 0,
  EV_REFUSED = 2,   // theorem hypothesis not satisfied (a normal outcome)
  EV_RESOURCE = 3,  // degree/iteration cap exceeded
  EV_BAD_INPUT = 4, // parse or argument error
  EV_INTERNAL = 5,  // internal invariant violated
};

struct ArgumentError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct ParseError : std::runtime_error {
  std::size_t offset; // byte offset into the offending input
  ParseError(const std::string& msg, std::size_t off)
      : std::runtime_error(msg), offset(off) {}
};

struct ResourceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised when a checked internal invariant fails; never caught by the library.
struct InternalError : std::logic_error {
  using std::logic_error::logic_error;
};

inline void internal_check(bool ok, const char* what) {
  if (!ok) throw InternalError(what);
}

} // namespace evstab
