#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace espo {

std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t fnv1a(std::string_view bytes, std::uint64_t seed = 0xcbf29ce484222325ULL);

/// Deterministic generator keyed by (global seed, task path), so every task
/// draws the same stream regardless of scheduling.
class TaskRng {
 public:
  TaskRng(std::uint64_t seed, std::string_view task);

  std::uint64_t next() { return engine_(); }
  // Uniform in [0, bound); bound > 0.
  std::uint64_t below(std::uint64_t bound);
  // Uniform in [lo, hi].
  std::int64_t between(std::int64_t lo, std::int64_t hi);

 private:
  std::mt19937_64 engine_;
};

}  // namespace espo
