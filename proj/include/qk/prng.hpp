#pragma once

#include <cstdint>

namespace qk {

// SplitMix64. Small, fast, and fully specified so that seeded runs reproduce
// bit-for-bit everywhere; the exact recurrence is written out in the README.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform-ish draw in [0, bound); bound > 0. Plain modulo: the tiny bias is
  // irrelevant here and the result is trivially reproducible.
  std::uint64_t next_below(std::uint64_t bound) { return next() % bound; }

  // True with probability p (clamped to [0,1]). Compares the top 53 bits of a
  // draw against round(p * 2^53) so the acceptance test is exact in doubles.
  bool next_bernoulli(double p) {
    if (p <= 0.0) return false;
    if (p >= 1.0) return true;
    auto threshold = static_cast<std::uint64_t>(p * 9007199254740992.0);  // p * 2^53
    return (next() >> 11) < threshold;
  }

 private:
  std::uint64_t state_;
};

// Stream seeded from (seed, stream_id) pairs, used when one logical seed has
// to drive several independent sequences.
inline SplitMix64 seeded_stream(std::uint64_t seed, std::uint64_t stream_id) {
  SplitMix64 mixer(seed ^ (0xD1B54A32D192ED03ULL * (stream_id + 1)));
  return SplitMix64(mixer.next());
}

}  // namespace qk
