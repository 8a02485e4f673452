#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sr1r/matrix.hpp"

namespace sr1r {

enum class ChannelModel { Rayleigh, Rician, ElaaLosDominated, ElaaMixed };

/// Placement of the base-station array and the user line, in meters/Hz.
struct Geometry {
  double user_height_m = 1.5;
  double bs_height_m = 10.0;
  double link_distance_m = 40.0;   // horizontal separation of the two lines
  double max_user_spread_m = 10.0; // users equally spaced within this span
  double carrier_hz = 3.5e9;
};

struct ChannelConfig {
  ChannelModel model = ChannelModel::Rayleigh;
  std::size_t m = 64;  // service antennas
  std::size_t n = 64;  // user antennas (rows of H)
  double rician_k_factor = 10.0;
  std::size_t users = 1;
  std::size_t antennas_per_user = 0;  // 0 means n / users
  Geometry geometry;
  /// Per-antenna line-of-sight probability is min(1, scale / distance);
  /// +infinity forces every link segment into the LoS state.
  double los_probability_scale = 18.0;

  void validate() const;
};

struct ChannelRealization {
  ComplexMatrix h;  // N x M
  ChannelModel model = ChannelModel::Rayleigh;
  std::uint64_t seed = 0;
  std::optional<Geometry> geometry;
  /// One flag per user antenna; populated by the aperture-array generator.
  std::vector<std::uint8_t> los_states;
};

/// Raw i.i.d. unit-variance complex Gaussian entries, before the Frobenius
/// normalization the generators apply.
ComplexMatrix rayleigh_entries(std::size_t m, std::size_t n, std::uint64_t seed);

ChannelRealization rayleigh(std::size_t m, std::size_t n, std::uint64_t seed);

/// Deterministic rank-1 steering-vector outer product for the line-of-sight
/// part, i.i.d. Rayleigh for the rest, mixed by the K-factor.
ChannelRealization rician(std::size_t m, std::size_t n, double k_factor, std::uint64_t seed);

/// Geometric aperture-array surrogate: per-antenna Bernoulli LoS states
/// with distance-decaying probability, free-space LoS phases, a 10 dB
/// non-LoS power penalty, and log-normal shadowing (4 dB LoS / 8 dB
/// non-LoS) per user antenna.
ChannelRealization elaa(const ChannelConfig& config, std::uint64_t seed);

/// Scales H so that ||H||_F^2 = N. A realization already within 1e-9
/// relative of that target is returned unchanged, making the operation
/// idempotent bit for bit.
ChannelRealization normalize(ChannelRealization realization);

ChannelRealization generate(const ChannelConfig& config, std::uint64_t seed);

const char* channel_model_name(ChannelModel model);
ChannelModel channel_model_from_name(const std::string& name);

}  // namespace sr1r
