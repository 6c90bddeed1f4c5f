#pragma once

#include <cstdint>

namespace negdep {

// Counter-based stream keyed by (seed, stream id). Output i of a stream is a
// pure function of (seed, stream, i) -- SplitMix64 over a per-stream key --
// so parallel workers can each own the stream matching their replicate index
// and results never depend on scheduling.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream) : key_(derive_key(seed, stream)) {}

  std::uint64_t next_u64() {
    std::uint64_t z = key_ + (++counter_) * 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0,1), 53 random bits.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform in {0,...,m-1}, unbiased (rejection on the top range).
  std::uint64_t next_below(std::uint64_t m) {
    const std::uint64_t limit = m * ((~std::uint64_t{0}) / m);
    std::uint64_t r;
    do {
      r = next_u64();
    } while (r >= limit);
    return r % m;
  }

  bool bernoulli(double p) { return next_double() < p; }

 private:
  static std::uint64_t derive_key(std::uint64_t seed, std::uint64_t stream) {
    auto fmix = [](std::uint64_t z) {
      z = (z ^ (z >> 33)) * 0xff51afd7ed558ccdULL;
      z = (z ^ (z >> 33)) * 0xc4ceb9fe1a85ec53ULL;
      return z ^ (z >> 33);
    };
    return fmix(fmix(seed + 0x2545f4914f6cdd1dULL) ^ (stream * 0x9e3779b97f4a7c15ULL + 1));
  }

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace negdep
