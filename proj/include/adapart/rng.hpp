#pragma once

#include <array>
#include <cmath>
#include <cstdint>

namespace adapart {

// Philox4x32-10 counter-based generator (Salmon et al., SC'11).
//
// Every draw is a pure function of (seed, stream, counter), so disjoint
// streams can be evaluated in any order, or in parallel, and always
// reproduce the sequential results. Streams are cheap: construct one
// PhiloxRng per logical task (per stratum, per sample, per replication).
namespace philox {

inline constexpr std::uint32_t kMult0 = 0xD2511F53u;
inline constexpr std::uint32_t kMult1 = 0xCD9E8D57u;
inline constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
inline constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

using Counter = std::array<std::uint32_t, 4>;
using Key = std::array<std::uint32_t, 2>;

inline void round_once(Counter& ctr, const Key& key) {
  const std::uint64_t prod0 = std::uint64_t(kMult0) * ctr[0];
  const std::uint64_t prod1 = std::uint64_t(kMult1) * ctr[2];
  const std::uint32_t hi0 = std::uint32_t(prod0 >> 32);
  const std::uint32_t lo0 = std::uint32_t(prod0);
  const std::uint32_t hi1 = std::uint32_t(prod1 >> 32);
  const std::uint32_t lo1 = std::uint32_t(prod1);
  ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
}

inline Counter block(Counter ctr, Key key) {
  for (int r = 0;;) {
    round_once(ctr, key);
    if (++r == 10) break;
    key[0] += kWeyl0;
    key[1] += kWeyl1;
  }
  return ctr;
}

}  // namespace philox

class PhiloxRng {
 public:
  PhiloxRng(std::uint64_t seed, std::uint64_t stream)
      : key_{std::uint32_t(seed), std::uint32_t(seed >> 32)},
        base_{0, 0, std::uint32_t(stream), std::uint32_t(stream >> 32)} {}

  std::uint32_t next_u32() {
    if (have_ == 0) refill();
    return buf_[--have_];
  }

  std::uint64_t next_u64() {
    const std::uint64_t hi = next_u32();
    return (hi << 32) | next_u32();
  }

  // Uniform on [0, 1) with 53 random bits.
  double next_double() { return double(next_u64() >> 11) * 0x1.0p-53; }

  // Standard normal via Box-Muller (pairs cached).
  double next_normal() {
    if (has_cached_normal_) {
      has_cached_normal_ = false;
      return cached_normal_;
    }
    double u1 = next_double();
    while (u1 == 0.0) u1 = next_double();
    const double u2 = next_double();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 6.283185307179586476925286766559 * u2;
    cached_normal_ = r * std::sin(theta);
    has_cached_normal_ = true;
    return r * std::cos(theta);
  }

  // Index in [0, n) without modulo bias (rejection on the top range).
  std::uint64_t next_index(std::uint64_t n) {
    const std::uint64_t limit = n * ((~std::uint64_t(0)) / n);
    std::uint64_t x = next_u64();
    while (x >= limit) x = next_u64();
    return x % n;
  }

 private:
  void refill() {
    philox::Counter ctr = base_;
    ctr[0] = std::uint32_t(block_);
    ctr[1] = std::uint32_t(block_ >> 32);
    ++block_;
    buf_ = philox::block(ctr, key_);
    have_ = 4;
  }

  philox::Key key_;
  philox::Counter base_;  // [unused, unused, stream_lo, stream_hi]
  std::uint64_t block_ = 0;
  philox::Counter buf_{};
  int have_ = 0;
  double cached_normal_ = 0.0;
  bool has_cached_normal_ = false;
};

}  // namespace adapart
