#pragma once

#include <cmath>
#include <cstdint>

namespace wlrni {

// Counter-based splittable PRNG. Output i of a stream is a finalizer hash of
// (key, i), so streams derived from distinct (seed, stream-id) paths are
// independent and a stream's draws do not depend on sibling streams. This is
// what makes per-pair / per-fold parallel generation bitwise reproducible.
class Rng {
 public:
  explicit Rng(std::uint64_t key) : key_(key) {}

  static Rng from_seed(std::uint64_t seed) { return Rng(mix(seed ^ kSeedTag)); }

  // Derive an independent child stream. Children with distinct ids never
  // collide with each other or with the parent's own output sequence.
  Rng split(std::uint64_t stream_id) const {
    return Rng(mix(key_ ^ mix(stream_id ^ kSplitTag)));
  }

  std::uint64_t next_u64() {
    counter_ += 0x9E3779B97F4A7C15ULL;
    return mix(key_ ^ counter_);
  }

  // Uniform on [0, 1) with 53 random bits.
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

  // Uniform integer in [lo, hi], inclusive. Rejection sampling, no modulo bias.
  std::uint64_t uniform_u64(std::uint64_t lo, std::uint64_t hi) {
    std::uint64_t range = hi - lo + 1;
    if (range == 0) return next_u64();  // full 64-bit range
    std::uint64_t limit = UINT64_MAX - UINT64_MAX % range;
    std::uint64_t v;
    do {
      v = next_u64();
    } while (v >= limit);
    return lo + v % range;
  }

  int uniform_int(int lo, int hi) {
    return static_cast<int>(uniform_u64(static_cast<std::uint64_t>(lo),
                                        static_cast<std::uint64_t>(hi)));
  }

  // Standard normal via Box-Muller; the paired draw is cached.
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = next_double();
    if (u1 <= 0.0) u1 = 0x1.0p-53;
    double u2 = next_double();
    double r = std::sqrt(-2.0 * std::log(u1));
    double theta = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
  }

  bool next_bool() { return (next_u64() & 1) != 0; }

 private:
  static constexpr std::uint64_t kSeedTag = 0x57524C4E49524E47ULL;
  static constexpr std::uint64_t kSplitTag = 0xA3EC4E24D1B5C9F7ULL;

  // splitmix64 finalizer
  static std::uint64_t mix(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
  }

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace wlrni
