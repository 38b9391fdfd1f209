#pragma once

#include <cstdlib>

#include "logcount/nat.hpp"

namespace logcount {

// Enumeration cap, in visited branch nodes. LOGCOUNT_BUDGET overrides.
inline std::uint64_t default_budget() {
  static const std::uint64_t cached = [] {
    if (const char* env = std::getenv("LOGCOUNT_BUDGET")) {
      char* end = nullptr;
      unsigned long long v = std::strtoull(env, &end, 10);
      if (end && *end == '\0' && v > 0) return static_cast<std::uint64_t>(v);
      throw BadInput("LOGCOUNT_BUDGET must be a positive integer");
    }
    return std::uint64_t(10'000'000);
  }();
  return cached;
}

// Counts enumeration work and fails loudly instead of hanging on
// pathological inputs.
struct BudgetMeter {
  std::uint64_t remaining;

  void spend() {
    if (remaining == 0)
      throw BudgetExceeded("enumeration budget exhausted; raise LOGCOUNT_BUDGET");
    --remaining;
  }
};

}  // namespace logcount
