#pragma once

#include <stdexcept>
#include <string>

namespace hdnet {

enum class ErrorKind {
  kInvalidInput,   // malformed argument or file
  kGuardExceeded,  // instance too large for an exhaustive routine
  kInternal,       // solver reached a state that cannot happen for a valid game
};

// Single exception type for the library. The CLI maps `kind` to exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void throw_invalid(const std::string& what) {
  throw Error(ErrorKind::kInvalidInput, what);
}

[[noreturn]] inline void throw_guard(const std::string& what) {
  throw Error(ErrorKind::kGuardExceeded, what);
}

}  // namespace hdnet
