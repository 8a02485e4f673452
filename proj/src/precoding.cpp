#include "sr1r/precoding.hpp"

#include <cmath>

#include "sr1r/regularizers.hpp"
#include "sr1r/rng.hpp"

namespace sr1r {

namespace {

std::size_t gray_decode(std::size_t g) {
  std::size_t b = g;
  for (std::size_t shift = 1; shift < 8; shift <<= 1) b ^= b >> shift;
  return b;
}

constexpr std::uint64_t kChannelSalt = 0x10000;
constexpr std::uint64_t kSymbolSalt = 0x20000;
constexpr std::uint64_t kNoiseSalt = 0x30000;
constexpr std::uint64_t kInverterSalt = 0x40000;

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t salt) {
  return Rng(master, salt).next_u64();
}

}  // namespace

QamConstellation QamConstellation::make(std::size_t order) {
  if (order != 4 && order != 16 && order != 64 && order != 256)
    throw ConfigError("QAM order must be 4, 16, 64 or 256");
  std::size_t side = 2;
  while (side * side < order) side <<= 1;
  std::size_t bits_per_axis = 0;
  while ((std::size_t{1} << bits_per_axis) < side) ++bits_per_axis;

  // Unit average energy: levels are odd integers scaled by
  // sqrt(2 (L^2 - 1) / 3).
  const double scale =
      std::sqrt(2.0 * (static_cast<double>(side * side) - 1.0) / 3.0);

  QamConstellation c;
  c.order = order;
  c.points.resize(order);
  for (std::size_t k = 0; k < order; ++k) {
    const std::size_t i_bits = k >> bits_per_axis;
    const std::size_t q_bits = k & (side - 1);
    const double i_level =
        2.0 * static_cast<double>(gray_decode(i_bits)) - static_cast<double>(side - 1);
    const double q_level =
        2.0 * static_cast<double>(gray_decode(q_bits)) - static_cast<double>(side - 1);
    c.points[k] = cplx(i_level / scale, q_level / scale);
  }
  return c;
}

std::vector<cplx> qam_modulate(std::span<const std::size_t> indices,
                               const QamConstellation& constellation) {
  std::vector<cplx> out(indices.size());
  for (std::size_t i = 0; i < indices.size(); ++i) {
    if (indices[i] >= constellation.order) throw ConfigError("symbol index out of range");
    out[i] = constellation.points[indices[i]];
  }
  return out;
}

std::vector<std::size_t> qam_demodulate(std::span<const cplx> received,
                                        const QamConstellation& constellation) {
  std::vector<std::size_t> out(received.size());
  for (std::size_t i = 0; i < received.size(); ++i) {
    std::size_t best = 0;
    double best_dist = std::norm(received[i] - constellation.points[0]);
    for (std::size_t k = 1; k < constellation.order; ++k) {
      const double d = std::norm(received[i] - constellation.points[k]);
      if (d < best_dist) {
        best_dist = d;
        best = k;
      }
    }
    out[i] = best;
  }
  return out;
}

ComplexMatrix zf_precoder(const ComplexMatrix& h, const ComplexMatrix& a_inv) {
  if (a_inv.rows() != a_inv.cols() || a_inv.rows() != h.rows())
    throw DimensionError("precoder needs an N x N inverse matching the channel rows");
  return multiply(h.adjoint(), a_inv);
}

ComplexMatrix rzf_precoder(const ComplexMatrix& h, double snr, const InverterConfig& inversion,
                           std::uint64_t seed) {
  HermitianMatrix r = rzf_matrix(gram(h), snr);
  return multiply(h.adjoint(), invert_hermitian(r, inversion, seed).inverse_estimate);
}

std::vector<SerResult> ser_experiment(const ChannelConfig& channel,
                                      const PrecoderConfig& precoder,
                                      std::span<const double> snr_db_list,
                                      std::size_t symbols_per_point, std::uint64_t seed) {
  channel.validate();
  if (precoder.realizations < 1 || symbols_per_point < 1)
    throw ConfigError("SER experiment needs positive realization and symbol counts");
  const QamConstellation constellation = QamConstellation::make(precoder.qam_order);
  const std::size_t n = channel.n;
  const std::size_t blocks_per_realization =
      (symbols_per_point + precoder.realizations * n - 1) / (precoder.realizations * n);

  std::vector<SerResult> results;
  results.reserve(snr_db_list.size());
  for (const double snr_db : snr_db_list) {
    const double snr = std::pow(10.0, snr_db / 10.0);
    const double energy = snr;  // noise power fixed at 1, so E / sigma_v^2 = snr

    SerResult point;
    point.snr_db = snr_db;
    for (std::size_t t = 0; t < precoder.realizations; ++t) {
      const ChannelRealization chan = generate(channel, derive_seed(seed, kChannelSalt + t));
      const HermitianMatrix a = gram(chan.h);

      ComplexMatrix inverse;
      if (precoder.kind == PrecoderKind::Rzf) {
        inverse = invert_hermitian(rzf_matrix(a, snr), precoder.inversion,
                                   derive_seed(seed, kInverterSalt + t))
                      .inverse_estimate;
      } else {
        inverse =
            invert_hermitian(a, precoder.inversion, derive_seed(seed, kInverterSalt + t))
                .inverse_estimate;
      }
      ComplexMatrix w = zf_precoder(chan.h, inverse);

      double tx_scale = 1.0;
      if (precoder.normalize_precoder) {
        tx_scale = w.frobenius_norm();
        if (tx_scale == 0.0) throw NumericalError("precoder collapsed to zero");
      }

      // Effective per-block map: s_hat = (H W / c) s * c / sqrt(E) + noise.
      ComplexMatrix g = multiply(chan.h, w);  // N x N, independent of c

      Rng symbol_rng(derive_seed(seed, kSymbolSalt + t), streams::kQamSymbols);
      Rng noise_rng(derive_seed(seed, kNoiseSalt + t), streams::kAwgnNoise);
      const double noise_scale =
          precoder.noise_free ? 0.0 : tx_scale / std::sqrt(energy);

      std::vector<std::size_t> sent(n);
      for (std::size_t blk = 0; blk < blocks_per_realization; ++blk) {
        for (std::size_t k = 0; k < n; ++k)
          sent[k] = static_cast<std::size_t>(symbol_rng.next_below(constellation.order));
        const std::vector<cplx> s = qam_modulate(sent, constellation);
        std::vector<cplx> received = matvec(g, s);
        for (std::size_t k = 0; k < n; ++k)
          received[k] += noise_scale * noise_rng.next_complex_gaussian();

        const std::vector<std::size_t> decided = qam_demodulate(received, constellation);
        for (std::size_t k = 0; k < n; ++k) {
          ++point.symbols_sent;
          if (decided[k] != sent[k]) ++point.symbol_errors;
        }
      }
    }
    point.ser = static_cast<double>(point.symbol_errors) / static_cast<double>(point.symbols_sent);
    results.push_back(point);
  }
  return results;
}

}  // namespace sr1r
