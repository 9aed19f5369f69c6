#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace setnorm {

/// Deterministic splittable generator (splitmix64). All randomness in the
/// library flows from a single seed through named streams, so runs are
/// reproducible across platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  /// Derives an independent stream for a named sub-experiment.
  Rng stream(const std::string& name) const {
    std::uint64_t h = 1469598103934665603ull;  // FNV-1a
    for (unsigned char c : name) {
      h ^= c;
      h *= 1099511628211ull;
    }
    Rng r(state_ ^ h);
    r.next();  // decorrelate
    return r;
  }

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, n), n > 0. Rejection sampling, platform independent.
  std::uint64_t below(std::uint64_t n) {
    std::uint64_t limit = ~0ull - (~0ull % n);
    std::uint64_t x;
    do {
      x = next();
    } while (x >= limit);
    return x % n;
  }

  bool coin() { return next() & 1; }

  /// Random subset of {0,...,n-1} where each point is kept with probability
  /// num/den.
  std::vector<std::uint32_t> subset(std::uint32_t n, std::uint64_t keep_num,
                                    std::uint64_t keep_den) {
    std::vector<std::uint32_t> out;
    for (std::uint32_t i = 0; i < n; ++i)
      if (below(keep_den) < keep_num) out.push_back(i);
    return out;
  }

 private:
  std::uint64_t state_;
};

}  // namespace setnorm
