#pragma once

#include <cstdint>

namespace logcount {

// splitmix64. Hand-rolled so that a seed fixes every randomized suite
// byte-for-byte across platforms and standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Uniform-ish value in [0, n); the modulo bias is irrelevant here.
  std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : next() % n; }

  std::int64_t in_range(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(
                    below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

  bool chance(std::uint64_t num, std::uint64_t den) { return below(den) < num; }

  Rng fork(std::uint64_t stream) { return Rng(next() ^ (stream * 0x9e3779b97f4a7c15ull)); }

 private:
  std::uint64_t state_;
};

}  // namespace logcount
