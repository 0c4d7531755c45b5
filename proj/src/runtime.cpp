#include <cstdlib>
#include <string>

#include "espo/parallel.hpp"
#include "espo/random.hpp"

namespace espo {
namespace {

std::atomic<unsigned> g_workers{0};

unsigned env_workers() {
  const char* v = std::getenv("ESPO_THREADS");
  if (!v || !*v) return 0;
  try {
    const long n = std::stol(v);
    return n > 0 ? static_cast<unsigned>(n) : 0;
  } catch (...) {
    return 0;
  }
}

}  // namespace

unsigned default_workers() {
  if (unsigned w = g_workers.load()) return w;
  if (unsigned w = env_workers()) return w;
  return std::max(1u, std::thread::hardware_concurrency());
}

void set_default_workers(unsigned workers) { g_workers.store(workers); }

unsigned resolve_workers(unsigned requested) { return requested ? requested : default_workers(); }

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t fnv1a(std::string_view bytes, std::uint64_t seed) {
  std::uint64_t h = seed;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

TaskRng::TaskRng(std::uint64_t seed, std::string_view task) : engine_(splitmix64(seed ^ fnv1a(task))) {}

std::uint64_t TaskRng::below(std::uint64_t bound) {
  // Rejection sampling, identical across standard libraries.
  const std::uint64_t limit = bound * (UINT64_MAX / bound);
  std::uint64_t v;
  do v = engine_();
  while (v >= limit);
  return v % bound;
}

std::int64_t TaskRng::between(std::int64_t lo, std::int64_t hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<std::int64_t>(below(span));
}

}  // namespace espo
