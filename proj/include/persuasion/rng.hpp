#pragma once

#include <array>
#include <cstdint>

namespace persuasion {

// Philox4x32-10 (Salmon et al., SC'11). Stateless: output depends only on (key, counter).
inline std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr, std::array<std::uint32_t, 2> key) {
  constexpr std::uint32_t M0 = 0xD2511F53u, M1 = 0xCD9E8D57u;
  constexpr std::uint32_t W0 = 0x9E3779B9u, W1 = 0xBB67AE85u;
  for (int round = 0; round < 10; ++round) {
    if (round > 0) {
      key[0] += W0;
      key[1] += W1;
    }
    std::uint64_t p0 = std::uint64_t(M0) * ctr[0];
    std::uint64_t p1 = std::uint64_t(M1) * ctr[2];
    ctr = {std::uint32_t(p1 >> 32) ^ ctr[1] ^ key[0], std::uint32_t(p1), std::uint32_t(p0 >> 32) ^ ctr[3] ^ key[1],
           std::uint32_t(p0)};
  }
  return ctr;
}

// Stream of draws keyed by (seed, stream, index). Sample i of a Monte Carlo run uses index i, so
// results do not depend on how samples are split across threads.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint32_t stream, std::uint64_t index)
      : key_{std::uint32_t(seed), std::uint32_t(seed >> 32)},
        ctr_{std::uint32_t(index), std::uint32_t(index >> 32), 0, stream} {}

  std::uint32_t next_u32() {
    if (pos_ == 4) refill();
    return buf_[pos_++];
  }

  std::uint64_t next_u64() {
    std::uint64_t lo = next_u32();
    return (std::uint64_t(next_u32()) << 32) | lo;
  }

  // Uniform on [0, 1) with 53 random bits.
  double uniform() { return double(next_u64() >> 11) * 0x1.0p-53; }

  // Exactly uniform integer in [0, m), m > 0 (Lemire's multiply-shift with rejection).
  std::uint64_t below(std::uint64_t m) {
    if (m <= 0xFFFFFFFFull) {
      const auto range = static_cast<std::uint32_t>(m);
      std::uint64_t prod = std::uint64_t(next_u32()) * range;
      auto low = static_cast<std::uint32_t>(prod);
      if (low < range) {
        const std::uint32_t threshold = static_cast<std::uint32_t>(-range) % range;
        while (low < threshold) {
          prod = std::uint64_t(next_u32()) * range;
          low = static_cast<std::uint32_t>(prod);
        }
      }
      return prod >> 32;
    }
    using u128 = unsigned __int128;
    u128 prod = u128(next_u64()) * m;
    auto low = static_cast<std::uint64_t>(prod);
    if (low < m) {
      const std::uint64_t threshold = (0 - m) % m;
      while (low < threshold) {
        prod = u128(next_u64()) * m;
        low = static_cast<std::uint64_t>(prod);
      }
    }
    return static_cast<std::uint64_t>(prod >> 64);
  }

 private:
  void refill() {
    buf_ = philox4x32(ctr_, key_);
    ++ctr_[2];
    pos_ = 0;
  }

  std::array<std::uint32_t, 2> key_;
  std::array<std::uint32_t, 4> ctr_;
  std::array<std::uint32_t, 4> buf_{};
  int pos_ = 4;
};

// Stream ids, kept apart so instance generation and sampling never share draws.
namespace streams {
constexpr std::uint32_t instance = 1;
constexpr std::uint32_t monte_carlo = 2;
constexpr std::uint32_t seeds = 3;
}  // namespace streams

}  // namespace persuasion
