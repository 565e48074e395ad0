#pragma once

// Deterministic random number generation.
//
// All randomized routines in this library take a 64-bit seed and produce
// bit-identical results across platforms and thread counts.  The generator
// is xoshiro256++ (Blackman & Vigna), seeded through SplitMix64.  Parallel
// sampling uses one logical stream per chunk of work; stream k is seeded
// from outputs [4k, 4k+3] of a single SplitMix64 sequence, so streams are
// disjoint by construction.

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>

namespace spinphase {

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

class Xoshiro256pp {
 public:
  explicit Xoshiro256pp(std::uint64_t seed) {
    SplitMix64 sm(seed);
    for (auto& w : s_) w = sm.next();
  }

  // Stream k of a given seed; streams use disjoint SplitMix64 outputs.
  static Xoshiro256pp stream(std::uint64_t seed, std::uint64_t stream_index) {
    SplitMix64 sm(seed);
    for (std::uint64_t i = 0; i < 4 * stream_index; ++i) sm.next();
    Xoshiro256pp g;
    for (auto& w : g.s_) w = sm.next();
    return g;
  }

  std::uint64_t next() {
    const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // Uniform double in [0, 1), 53 random bits.
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Standard normal via Box-Muller.
  double normal() {
    double u1 = uniform01();
    while (u1 == 0.0) u1 = uniform01();
    const double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * std::numbers::pi * u2);
  }

  // Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n) {
    // Rejection-free modulo bias is negligible for the small n used here,
    // but do it properly anyway.
    const std::uint64_t threshold = (~n + 1) % n;
    for (;;) {
      const std::uint64_t r = next();
      if (r >= threshold) return r % n;
    }
  }

 private:
  Xoshiro256pp() = default;

  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  std::array<std::uint64_t, 4> s_{};
};

}  // namespace spinphase
