#include "sr1r/channels.hpp"

#include <cmath>
#include <limits>

#include "sr1r/rng.hpp"

namespace sr1r {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kSpeedOfLight = 299792458.0;
constexpr double kNlosPenaltyDb = 10.0;
constexpr double kLosShadowingDb = 4.0;
constexpr double kNlosShadowingDb = 8.0;

double frobenius_sq(const ComplexMatrix& h) {
  const double f = h.frobenius_norm();
  return f * f;
}

}  // namespace

void ChannelConfig::validate() const {
  if (n < 1 || m < 1) throw ConfigError("channel dimensions must be at least 1");
  if (n > m) throw ConfigError("channel needs n <= m (user antennas cannot exceed service antennas)");
  if (model == ChannelModel::Rician && rician_k_factor < 0.0)
    throw ConfigError("Rician K-factor must be nonnegative");
  if (model == ChannelModel::ElaaLosDominated || model == ChannelModel::ElaaMixed) {
    if (users < 1) throw ConfigError("aperture-array config needs at least one user");
    const std::size_t per_user = antennas_per_user == 0 ? n / users : antennas_per_user;
    if (per_user * users != n)
      throw ConfigError("aperture-array config needs n = users * antennas_per_user");
    if (geometry.carrier_hz <= 0.0 || geometry.link_distance_m <= 0.0)
      throw ConfigError("aperture-array geometry needs positive carrier and distance");
    if (!(los_probability_scale >= 0.0))
      throw ConfigError("los_probability_scale must be nonnegative");
  }
}

ComplexMatrix rayleigh_entries(std::size_t m, std::size_t n, std::uint64_t seed) {
  if (n < 1 || m < 1 || n > m) throw ConfigError("rayleigh needs 1 <= n <= m");
  Rng rng(seed, streams::kMatrixEntries);
  ComplexMatrix h(n, m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) h(i, j) = rng.next_complex_gaussian();
  return h;
}

ChannelRealization rayleigh(std::size_t m, std::size_t n, std::uint64_t seed) {
  ChannelRealization r;
  r.h = rayleigh_entries(m, n, seed);
  r.model = ChannelModel::Rayleigh;
  r.seed = seed;
  return normalize(std::move(r));
}

ChannelRealization rician(std::size_t m, std::size_t n, double k_factor, std::uint64_t seed) {
  if (k_factor < 0.0) throw ConfigError("Rician K-factor must be nonnegative");
  ComplexMatrix h = rayleigh_entries(m, n, seed);

  if (k_factor > 0.0) {
    // Rank-1 steering outer product at a seed-drawn angle; unit-modulus
    // entries keep the mean per-entry power at 1 after mixing.
    Rng angle_rng(seed, streams::kChannelLosAngle);
    const double sin_theta = 2.0 * angle_rng.next_double() - 1.0;
    const double los_gain = std::sqrt(k_factor / (k_factor + 1.0));
    const double nlos_gain = std::sqrt(1.0 / (k_factor + 1.0));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        const double phase = kPi * sin_theta * (static_cast<double>(i) - static_cast<double>(j));
        const cplx steer(std::cos(phase), std::sin(phase));
        h(i, j) = los_gain * steer + nlos_gain * h(i, j);
      }
    }
  }

  ChannelRealization r;
  r.h = std::move(h);
  r.model = ChannelModel::Rician;
  r.seed = seed;
  return normalize(std::move(r));
}

ChannelRealization elaa(const ChannelConfig& config, std::uint64_t seed) {
  config.validate();
  if (config.model != ChannelModel::ElaaLosDominated && config.model != ChannelModel::ElaaMixed)
    throw ConfigError("elaa() expects an aperture-array model");

  const std::size_t n = config.n, m = config.m;
  const Geometry& geo = config.geometry;
  const std::size_t users = config.users;
  const std::size_t per_user = config.antennas_per_user == 0 ? n / users : config.antennas_per_user;

  const double wavelength = kSpeedOfLight / geo.carrier_hz;
  const double spacing = wavelength / 2.0;
  const double dz = geo.bs_height_m - geo.user_height_m;

  // Service array along x at y = 0; user antennas along a parallel line at
  // y = link_distance.
  std::vector<double> bs_x(m), user_x(n);
  for (std::size_t j = 0; j < m; ++j)
    bs_x[j] = (static_cast<double>(j) - 0.5 * static_cast<double>(m - 1)) * spacing;
  for (std::size_t u = 0; u < users; ++u) {
    const double center =
        users == 1 ? 0.0
                   : (static_cast<double>(u) / static_cast<double>(users - 1) - 0.5) *
                         geo.max_user_spread_m;
    for (std::size_t a = 0; a < per_user; ++a) {
      const double offset =
          (static_cast<double>(a) - 0.5 * static_cast<double>(per_user - 1)) * spacing;
      user_x[u * per_user + a] = center + offset;
    }
  }

  Rng state_rng(seed, streams::kChannelLosStates);
  Rng shadow_rng(seed, streams::kChannelShadowing);
  Rng nlos_rng(seed, streams::kChannelNlosEntries);

  ChannelRealization r;
  r.h = ComplexMatrix(n, m);
  r.model = config.model;
  r.seed = seed;
  r.geometry = geo;
  r.los_states.resize(n);

  const bool force_los = std::isinf(config.los_probability_scale);
  for (std::size_t i = 0; i < n; ++i) {
    const double dist_center = std::hypot(user_x[i], geo.link_distance_m, dz);
    const double p_los =
        force_los ? 1.0 : std::min(1.0, config.los_probability_scale / dist_center);
    const bool los = force_los || state_rng.next_double() < p_los;
    r.los_states[i] = los ? 1 : 0;

    const double shadow_db =
        (los ? kLosShadowingDb : kNlosShadowingDb) * shadow_rng.next_gaussian();
    const double shadow = std::pow(10.0, shadow_db / 20.0);

    for (std::size_t j = 0; j < m; ++j) {
      const double d = std::hypot(user_x[i] - bs_x[j], geo.link_distance_m, dz);
      const double gain = wavelength / (4.0 * kPi * d);
      if (los) {
        const double phase = -2.0 * kPi * d / wavelength;
        r.h(i, j) = shadow * gain * cplx(std::cos(phase), std::sin(phase));
      } else {
        const double penalty = std::pow(10.0, -kNlosPenaltyDb / 20.0);
        r.h(i, j) = shadow * gain * penalty * nlos_rng.next_complex_gaussian();
      }
    }
  }
  return normalize(std::move(r));
}

ChannelRealization normalize(ChannelRealization realization) {
  const double target = static_cast<double>(realization.h.rows());
  const double power = frobenius_sq(realization.h);
  if (power == 0.0) throw NumericalError("cannot normalize a zero channel");
  if (std::abs(power - target) <= 1e-9 * target) return realization;
  realization.h *= cplx(std::sqrt(target / power), 0.0);
  return realization;
}

ChannelRealization generate(const ChannelConfig& config, std::uint64_t seed) {
  config.validate();
  switch (config.model) {
    case ChannelModel::Rayleigh:
      return rayleigh(config.m, config.n, seed);
    case ChannelModel::Rician:
      return rician(config.m, config.n, config.rician_k_factor, seed);
    case ChannelModel::ElaaLosDominated:
    case ChannelModel::ElaaMixed:
      return elaa(config, seed);
  }
  throw ConfigError("unknown channel model");
}

const char* channel_model_name(ChannelModel model) {
  switch (model) {
    case ChannelModel::Rayleigh:
      return "rayleigh";
    case ChannelModel::Rician:
      return "rician";
    case ChannelModel::ElaaLosDominated:
      return "elaa-los";
    case ChannelModel::ElaaMixed:
      return "elaa-mixed";
  }
  return "unknown";
}

ChannelModel channel_model_from_name(const std::string& name) {
  if (name == "rayleigh") return ChannelModel::Rayleigh;
  if (name == "rician") return ChannelModel::Rician;
  if (name == "elaa-los") return ChannelModel::ElaaLosDominated;
  if (name == "elaa-mixed") return ChannelModel::ElaaMixed;
  throw ConfigError("unknown channel model '" + name + "'");
}

}  // namespace sr1r
