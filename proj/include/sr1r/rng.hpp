#pragma once

#include <cmath>
#include <complex>
#include <cstdint>

namespace sr1r {

/// Portable counter-based 64-bit generator (SplitMix64 core).
///
/// The i-th output is finalize(state0 + i*gamma), so a stream is fully
/// determined by its initial state. Streams are split by hashing
/// (seed, stream_id) non-additively; distinct (seed, stream) pairs map to
/// unrelated sequences, which keeps derived trial/candidate seeds
/// reproducible across runs and languages.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream_id = 0)
      : state_(mix(mix(seed) + kGamma * (stream_id + 1))) {}

  std::uint64_t next_u64() {
    state_ += kGamma;
    return mix(state_);
  }

  /// Uniform double in [0, 1).
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Uniform double in (0, 1]; safe as a log() argument.
  double next_double_open() {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  }

  /// Standard real Gaussian, Box-Muller on two fixed-order draws.
  double next_gaussian() {
    const double u1 = next_double_open();
    const double u2 = next_double();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
  }

  /// Circularly-symmetric complex Gaussian with unit total variance
  /// (real and imaginary parts each N(0, 1/2)).
  std::complex<double> next_complex_gaussian() {
    const double u1 = next_double_open();
    const double u2 = next_double();
    const double r = std::sqrt(-std::log(u1));
    return {r * std::cos(kTwoPi * u2), r * std::sin(kTwoPi * u2)};
  }

  /// Uniform integer in [0, bound) by rejection-free scaling; bound > 0.
  std::uint64_t next_below(std::uint64_t bound) {
    // 53-bit path is unbiased enough for constellation sizes and trial
    // counts used here and keeps the draw order platform-independent.
    return static_cast<std::uint64_t>(next_double() * static_cast<double>(bound)) % bound;
  }

 private:
  static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ull;
  static constexpr double kTwoPi = 6.283185307179586476925286766559;

  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  std::uint64_t state_;
};

/// Stream ids used across the library so that independent random purposes
/// never share a sequence.
namespace streams {
constexpr std::uint64_t kMatrixEntries = 0;
constexpr std::uint64_t kPowerStartTop = 1;
constexpr std::uint64_t kPowerStartBottom = 2;
constexpr std::uint64_t kChannelLosStates = 3;
constexpr std::uint64_t kChannelShadowing = 4;
constexpr std::uint64_t kChannelNlosEntries = 5;
constexpr std::uint64_t kChannelLosAngle = 6;
constexpr std::uint64_t kQamSymbols = 7;
constexpr std::uint64_t kAwgnNoise = 8;
constexpr std::uint64_t kRankKNoiseB = 9;
constexpr std::uint64_t kRankKNoiseXi = 10;
}  // namespace streams

}  // namespace sr1r
