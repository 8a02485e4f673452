#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "sr1r/channels.hpp"
#include "sr1r/inversion.hpp"
#include "sr1r/matrix.hpp"

namespace sr1r {

/// Square QAM constellation, Gray-mapped per axis, unit average energy.
struct QamConstellation {
  std::size_t order = 0;
  std::vector<cplx> points;

  /// order must be one of 4, 16, 64, 256.
  static QamConstellation make(std::size_t order);
};

std::vector<cplx> qam_modulate(std::span<const std::size_t> indices,
                               const QamConstellation& constellation);

/// Nearest-point decisions; ties break toward the lower index.
std::vector<std::size_t> qam_demodulate(std::span<const cplx> received,
                                        const QamConstellation& constellation);

/// W = H^H A_inv (M x N).
ComplexMatrix zf_precoder(const ComplexMatrix& h, const ComplexMatrix& a_inv);

/// W = H^H (A + snr^{-1} I)^{-1}, with the inverse produced by the
/// configured method.
ComplexMatrix rzf_precoder(const ComplexMatrix& h, double snr, const InverterConfig& inversion,
                           std::uint64_t seed);

struct SerResult {
  double snr_db = 0.0;
  std::size_t symbol_errors = 0;
  std::size_t symbols_sent = 0;
  double ser = 0.0;
};

enum class PrecoderKind { Zf, Rzf };

struct PrecoderConfig {
  PrecoderKind kind = PrecoderKind::Zf;
  InverterConfig inversion;
  std::size_t qam_order = 16;
  std::size_t realizations = 200;
  /// Scale each precoder to unit Frobenius norm so the configured transmit
  /// power is the power actually radiated; the receiver undoes the known
  /// scale coherently. Without this, exact zero-forcing transmits with
  /// unbounded power on ill-conditioned channels and no regularized
  /// precoder can ever beat it.
  bool normalize_precoder = true;
  /// Transmit with zero noise (the snr grid still shapes the RZF
  /// regularizer).
  bool noise_free = false;
};

/// Monte-Carlo SER sweep. Channel, symbol, and noise streams depend only
/// on (seed, realization), never on the precoder or inversion method, so
/// runs with different precoders are paired sample by sample.
std::vector<SerResult> ser_experiment(const ChannelConfig& channel, const PrecoderConfig& precoder,
                                      std::span<const double> snr_db_list,
                                      std::size_t symbols_per_point, std::uint64_t seed);

}  // namespace sr1r
