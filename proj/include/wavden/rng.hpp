#pragma once

// Deterministic random streams used for noise injection and seed derivation.
//
// The exact algorithms are part of the reproducibility contract; another
// implementation that follows the steps below reproduces every noise field
// bit-for-bit (up to the platform's libm for log/cos/sin).
//
//   splitmix64(x):  x += 0x9E3779B97F4A7C15
//                   z = x
//                   z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//                   z = (z ^ (z >> 27)) * 0x94D049BB133111EB
//                   return z ^ (z >> 31)
//
//   Xoshiro256** state: four consecutive splitmix64 outputs starting from the
//   seed (the splitmix counter carries between calls).
//
//   Uniform double in (0, 1]:  ((next() >> 11) + 1) * 2^-53
//
//   Gaussian pair (Box-Muller):  r = sqrt(-2 ln u1), theta = 2 pi u2,
//                                z0 = r cos(theta), z1 = r sin(theta)
//   z0 is consumed before z1.

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <string_view>

namespace wavden {

class SplitMix64 {
 public:
  explicit constexpr SplitMix64(std::uint64_t state) noexcept : state_(state) {}

  constexpr std::uint64_t next() noexcept {
    state_ += 0x9E3779B97F4A7C15ULL;
    return mix(state_);
  }

  static constexpr std::uint64_t mix(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

// xoshiro256** 1.0 (Blackman & Vigna).
class Xoshiro256StarStar {
 public:
  using result_type = std::uint64_t;

  explicit constexpr Xoshiro256StarStar(std::uint64_t seed) noexcept {
    SplitMix64 sm(seed);
    for (auto& word : s_) word = sm.next();
  }

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return ~result_type{0}; }

  constexpr result_type operator()() noexcept { return next(); }

  constexpr result_type next() noexcept {
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // Uniform in (0, 1]; never returns 0 so log() is always finite.
  constexpr double uniform_open_closed() noexcept {
    return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53;
  }

 private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
    return (x << k) | (x >> (64 - k));
  }

  std::array<std::uint64_t, 4> s_{};
};

// Standard normal draws via the basic (trigonometric) Box-Muller transform.
class GaussianStream {
 public:
  explicit GaussianStream(std::uint64_t seed) noexcept : gen_(seed) {}

  double next() noexcept {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = gen_.uniform_open_closed();
    const double u2 = gen_.uniform_open_closed();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
  }

 private:
  Xoshiro256StarStar gen_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

// Folds a byte string into a 64-bit seed:
//   h = master; for each byte b: h = splitmix64_mix(h ^ b + 0x9E3779B97F4A7C15)
//   return splitmix64_mix(h + length)
inline constexpr std::uint64_t hash_key(std::uint64_t master, std::string_view key) noexcept {
  std::uint64_t h = master;
  for (unsigned char b : key) {
    h = SplitMix64::mix((h ^ b) + 0x9E3779B97F4A7C15ULL);
  }
  return SplitMix64::mix(h + static_cast<std::uint64_t>(key.size()));
}

}  // namespace wavden
