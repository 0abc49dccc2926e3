#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace orbital {

// Values match the orb_status codes of the C API.
enum class ErrorCode : int {
  invalid_argument = 1,
  degenerate_angle = 2,
  out_of_range = 3,
  not_invertible = 4,
  degree_mismatch = 5,
  capacity = 6,
  invariant_violation = 7,
  io = 8,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Raised when a requested index exceeds what the exact combinatorics will
// materialize.
class CapacityError : public Error {
 public:
  explicit CapacityError(std::uint64_t k)
      : Error(ErrorCode::capacity,
              "capacity exceeded at index " + std::to_string(k)),
        index_(k) {}

  std::uint64_t index() const noexcept { return index_; }

 private:
  std::uint64_t index_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

inline void require(bool cond, ErrorCode code, const char* what) {
  if (!cond) throw Error(code, what);
}

}  // namespace orbital
