#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sr1r/matrix.hpp"

namespace sr1r {

struct SchulzOptions {
  std::size_t max_iterations = 200;
  double residual_tolerance = 1e-9;
  /// When set, run exactly this many iterations and ignore the tolerance
  /// (iteration-budget sweeps).
  std::optional<std::size_t> fixed_iterations;
};

struct InversionReport {
  ComplexMatrix inverse_estimate;
  /// || I - A X_i ||_F per iteration, including the i = 0 entry.
  std::vector<double> residual_trace;
  std::size_t iterations_run = 0;
  double omega = 0.0;
  std::string method_label;
  /// Residual of the returned inverse against the matrix the caller asked
  /// about (the original Gram matrix for the regularized and
  /// preconditioned pipelines).
  double final_residual = 0.0;
};

/// omega = 1 / max_n sum_i |(R^H R)_{n,i}| (Gershgorin bound on the
/// squared singular values), which guarantees rho(I - omega R R^H) < 1.
double gershgorin_omega(const ComplexMatrix& r);

/// X_0 = omega A^H; X_i = 2 X_{i-1} - X_{i-1} A X_{i-1}. Works for any
/// square invertible A whose omega satisfies the spectral-radius bound.
/// Throws NumericalError once the residual exceeds 1e6.
InversionReport schulz_invert(const ComplexMatrix& a, double omega, const SchulzOptions& opts = {});
InversionReport schulz_invert(const HermitianMatrix& a, double omega, const SchulzOptions& opts = {});

}  // namespace sr1r
