#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <utility>
#include <vector>

namespace mqa {

// 64-bit FNV-1a, used for config fingerprints and stream keying.
inline std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

// splitmix64 finalizer; full avalanche over one word.
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// mt19937_64 raw output is pinned by the standard. The derived draws below
// avoid std::uniform_*_distribution, whose mapping is implementation-defined,
// so sequences are identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next() { return eng_(); }

  // Uniform in [0, bound), bound >= 1. Masked rejection keeps it unbiased.
  std::uint64_t below(std::uint64_t bound) {
    if (bound <= 1) return 0;
    std::uint64_t mask = bound - 1;
    mask |= mask >> 1;
    mask |= mask >> 2;
    mask |= mask >> 4;
    mask |= mask >> 8;
    mask |= mask >> 16;
    mask |= mask >> 32;
    for (;;) {
      std::uint64_t v = next() & mask;
      if (v < bound) return v;
    }
  }

  // Uniform integer in [lo, hi], inclusive on both ends.
  int range_int(int lo, int hi) {
    return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo) + 1));
  }

  // Uniform in [0, 1) with 53 random mantissa bits.
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double range_real(double lo, double hi) { return lo + unit() * (hi - lo); }

  bool coin() { return (next() & 1) != 0; }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(below(i));
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  std::mt19937_64 eng_;
};

// Independent stream per (seed, purpose, key). Work items drawing from their
// own stream produce identical values whether scheduled serially or across
// worker threads.
inline Rng keyed_stream(std::uint64_t seed, std::string_view purpose, std::string_view key) {
  std::uint64_t h = fnv1a64(purpose);
  h = mix64(h ^ fnv1a64(key));
  return Rng(mix64(seed ^ h));
}

}  // namespace mqa
