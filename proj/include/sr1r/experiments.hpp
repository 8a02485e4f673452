#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "sr1r/channels.hpp"
#include "sr1r/inversion.hpp"
#include "sr1r/precoding.hpp"

namespace sr1r {

/// Condition-number survey: per trial, the original Gram condition number
/// against every regularizer and preconditioner, the rank-1 performance
/// bound, and the placement measure of the estimate-driven construction.
struct CondCdfConfig {
  ChannelConfig channel;
  std::size_t trials = 1000;
  double rzf_snr_db = 20.0;
  std::size_t tau = 1;
  std::size_t epia_candidates = 4;
  /// Iteration budget used to score e-PIA candidates by residual.
  std::size_t selection_iterations = 12;
  std::size_t threads = 1;
};

void run_cond_cdf(const CondCdfConfig& config, std::uint64_t seed, std::ostream& out);

/// SER grid over (precoder x inversion method x iteration budget x snr).
/// A budget of 0 runs the inversion to its residual tolerance.
struct SerSweepConfig {
  ChannelConfig channel;
  std::vector<PrecoderKind> precoders{PrecoderKind::Zf};
  std::vector<InversionMethod> methods{InversionMethod::Schulz};
  std::vector<std::size_t> budgets{0};
  std::vector<double> snr_db{20.0, 30.0, 40.0};
  std::size_t symbols_per_point = 200000;
  std::size_t realizations = 200;
  std::size_t qam_order = 16;
  std::size_t tau = 1;
  std::size_t epia_candidates = 4;
  SchulzOptions schulz;
  bool normalize_precoder = true;
  bool noise_free = false;
  std::size_t threads = 1;
};

void run_ser_sweep(const SerSweepConfig& config, std::uint64_t seed, std::ostream& out);

const char* precoder_name(PrecoderKind kind);
PrecoderKind precoder_from_name(const std::string& name);

}  // namespace sr1r
