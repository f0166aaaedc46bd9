#pragma once

#include <cstdint>
#include <initializer_list>

namespace md5fol {

// SplitMix64 stream. Verification reports must be byte-identical across
// platforms for a fixed seed, and the <random> distributions are
// implementation-defined, so all randomness in the project is drawn from
// this generator through explicit key derivation.
class Rng {
 public:
  explicit Rng(std::uint64_t key) : state_(key) {}

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1).
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  /// Uniform magnitude in [lo, hi] with an independent random sign.
  double signed_uniform(double lo, double hi) {
    double m = uniform(lo, hi);
    return (next_u64() & 1u) ? m : -m;
  }

  bool chance(double p) { return uniform01() < p; }

 private:
  std::uint64_t state_;
};

/// Folds a path of indices (suite tag, family index, draw, sample, ...)
/// into a stream key. Every sample gets its own key, so the sample stream
/// does not depend on evaluation order.
inline std::uint64_t derive_key(std::uint64_t seed,
                                std::initializer_list<std::uint64_t> path) {
  std::uint64_t k = seed ^ 0x6a09e667f3bcc909ull;
  for (std::uint64_t p : path) {
    k ^= p + 0x9e3779b97f4a7c15ull + (k << 6) + (k >> 2);
    k = Rng(k).next_u64();
  }
  return k;
}

}  // namespace md5fol
