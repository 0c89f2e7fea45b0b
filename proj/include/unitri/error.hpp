#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace unitri {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a breadth-first closure grows past its element cap.
class ClosureCapExceeded : public Error {
 public:
  ClosureCapExceeded(std::uint64_t partial_count, std::uint64_t cap)
      : Error("closure exceeds cap (" + std::to_string(partial_count) + " elements seen, cap " +
              std::to_string(cap) + ")"),
        partial_count_(partial_count) {}

  std::uint64_t partial_count() const noexcept { return partial_count_; }

 private:
  std::uint64_t partial_count_;
};

/// Raised when a closure is cancelled through its stop token.
class Cancelled : public Error {
 public:
  Cancelled() : Error("computation cancelled") {}
};

}  // namespace unitri
