#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace disperse {

using NodeId = int32_t;
using Length = uint64_t;  // edge lengths and distances, stored pre-scaled x2
using Weight = uint64_t;

constexpr NodeId kNoNode = -1;
constexpr Length kNoDist = std::numeric_limits<Length>::max();

// Any root-to-leaf path must fit in 62 bits after the x2 scaling, so that
// pairwise distances fit in 63 bits and sums of two distances never wrap.
constexpr Length kMaxPathLength = (Length{1} << 62) - 1;

/// Malformed or out-of-contract input (bad tree file, invalid flags, ...).
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& msg) : std::runtime_error(msg) {}
};

/// A documented precondition of an operation was violated by the caller.
class ContractViolation : public std::logic_error {
 public:
  explicit ContractViolation(const std::string& msg) : std::logic_error(msg) {}
};

inline Length checked_add(Length a, Length b) {
  Length s = a + b;
  if (s < a) throw InputError("64-bit overflow in length/weight arithmetic");
  return s;
}

/// Shared instrumentation counter. Complexity claims in this project are
/// checked through counters like this one, never through wall-clock time.
struct TouchCounter {
  uint64_t touches = 0;
  void add(uint64_t k = 1) { touches += k; }
};

}  // namespace disperse
