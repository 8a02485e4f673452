#pragma once

#include <cstdint>
#include <string>

#include "sr1r/matrix.hpp"
#include "sr1r/schulz.hpp"

namespace sr1r {

enum class InversionMethod { Oracle, Schulz, Pia, Epia, Jacobi, GaussSeidel, Ssor };

struct InverterConfig {
  InversionMethod method = InversionMethod::Schulz;
  SchulzOptions schulz;
  std::size_t tau = 1;              // power-iteration cycles
  std::size_t epia_candidates = 4;  // parallel candidates for e-PIA
};

/// Inverts a Hermitian positive-definite matrix through the configured
/// pipeline. The oracle path goes through the exact eigendecomposition and
/// ignores the Schulz options.
InversionReport invert_hermitian(const HermitianMatrix& a, const InverterConfig& config,
                                 std::uint64_t seed);

const char* inversion_method_name(InversionMethod method);
InversionMethod inversion_method_from_name(const std::string& name);

}  // namespace sr1r
