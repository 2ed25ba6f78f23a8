#pragma once

#include <cstdint>

namespace wsc {

// SplitMix64 (Steele, Lea, Flood 2014). Fixed constants, no platform
// dependence, so a seed produces the same stream everywhere.
class SplitMix64 {
  public:
    explicit SplitMix64(uint64_t seed) : state_(seed) {}

    uint64_t next() {
        uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, n). n must be > 0. Plain modulo; the bias is
    // irrelevant for instance generation and keeps the stream portable.
    uint64_t below(uint64_t n) { return next() % n; }

    bool coin() { return (next() & 1u) != 0; }

  private:
    uint64_t state_;
};

}  // namespace wsc
