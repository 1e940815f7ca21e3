#ifndef DSG_UTIL_HPP
#define DSG_UTIL_HPP

#include <chrono>
#include <optional>

#include "dsg/errors.hpp"

namespace dsg {

// Cooperative deadline. Long-running loops call check() periodically; an
// unset deadline never fires.
class Deadline {
 public:
  Deadline() = default;
  explicit Deadline(std::chrono::milliseconds budget)
      : at_(std::chrono::steady_clock::now() + budget) {}

  bool expired() const {
    return at_ && std::chrono::steady_clock::now() >= *at_;
  }

  void check() const {
    if (expired()) throw TimeoutError("deadline exceeded");
  }

 private:
  std::optional<std::chrono::steady_clock::time_point> at_;
};

}  // namespace dsg

#endif  // DSG_UTIL_HPP
