#pragma once

#include <cstdint>
#include <vector>

#include "sr1r/evd.hpp"
#include "sr1r/matrix.hpp"
#include "sr1r/schulz.hpp"

namespace sr1r {

/// Parameters of the symmetric rank-1 regularizer R = A - xi b b^H.
struct RankOneUpdate {
  double xi = 0.0;          // positive for every constructor here
  std::vector<cplx> b;      // unit norm
  /// Set when the spectrum leaves no valid mixing coefficient (all
  /// eigenvalues equal, or the top-eigenvalue estimate fell below the
  /// spectrum mean). Downstream inversion then skips the update.
  bool degenerate = false;
};

/// R = A - xi b b^H, exactly Hermitian by construction.
HermitianMatrix apply_rank1(const HermitianMatrix& a, const RankOneUpdate& u);

/// A^{-1} = R^{-1} - xi R^{-1} b b^H R^{-1} / (1 + xi b^H R^{-1} b).
/// Throws when the denominator magnitude falls below 1e-12.
ComplexMatrix sherman_morrison(const ComplexMatrix& r_inv, const RankOneUpdate& u);

/// Full-knowledge construction: aims the mixed pair of extreme eigenvalues
/// so that one lands exactly on the second-largest eigenvalue and the
/// other strictly inside (-lambda_1, -lambda_{N-2}); falls back to the
/// estimate-free construction (xi = lambda_0, beta = mean of the rest over
/// lambda_0) whenever that placement is infeasible for the given spectrum.
RankOneUpdate sr1r_params_exact(const SpectralDecomposition& spec);

/// Estimate-driven construction: xi = lambda0_hat,
/// beta = (trace - lambda0_hat) / ((N-1) lambda0_hat),
/// b = alpha u0_hat + beta uN1_hat, re-normalized to unit norm.
RankOneUpdate sr1r_params_from_estimates(double lambda0_hat, std::span<const cplx> u0_hat,
                                         std::span<const cplx> uN1_hat, double trace);

/// Estimates via power iteration (tau cycles on A and on the shifted
/// matrix), then the estimate-driven construction.
RankOneUpdate sr1r_params_pia(const HermitianMatrix& a, std::size_t tau, std::uint64_t seed);

struct PiaInversion {
  InversionReport report;
  RankOneUpdate params;
  bool regularizer_applied = false;
};

/// Full pipeline: parameter estimation, rank-1 regularization, Gershgorin
/// scaling, Schulz inversion of R, Sherman-Morrison recovery. The report's
/// residual trace is measured against R; final_residual against A.
PiaInversion pia_invert_detailed(const HermitianMatrix& a, std::size_t tau, std::uint64_t seed,
                                 const SchulzOptions& opts = {});
InversionReport pia_invert(const HermitianMatrix& a, std::size_t tau, std::uint64_t seed,
                           const SchulzOptions& opts = {});

struct EpiaInversion {
  InversionReport report;
  RankOneUpdate params;
  std::size_t selected_candidate = 0;
};

/// Runs L independent pipelines with derived seeds (seed + candidate
/// index) and keeps the candidate with the smallest residual against A;
/// ties break toward the lowest index.
EpiaInversion epia_invert_detailed(const HermitianMatrix& a, std::size_t candidates,
                                   std::size_t tau, std::uint64_t seed,
                                   const SchulzOptions& opts = {});
InversionReport epia_invert(const HermitianMatrix& a, std::size_t candidates, std::size_t tau,
                            std::uint64_t seed, const SchulzOptions& opts = {});

/// A + snr^{-1} I.
HermitianMatrix rzf_matrix(const HermitianMatrix& a, double snr);

/// Rank-K regularizer R = A - B Xi B^H with diagonal Xi.
struct RankKUpdate {
  ComplexMatrix b;              // N x K
  std::vector<double> xi_diag;  // K entries
  /// Cleared by the perturbed constructor, whose columns are deliberately
  /// left non-orthonormal.
  bool orthonormal_columns = true;
};

/// Moves the first K1 and last K2 eigenvalues onto the average of the
/// rest: B holds those eigenvector columns and Xi_kk = lambda_k - average.
RankKUpdate rankk_params_exact(const SpectralDecomposition& spec, std::size_t k1, std::size_t k2);

/// Exact construction plus i.i.d. Gaussian noise of the given standard
/// deviation on B (complex) and on the Xi diagonal (real).
RankKUpdate rankk_perturbed(const SpectralDecomposition& spec, std::size_t k1, std::size_t k2,
                            double noise_sigma, std::uint64_t seed);

HermitianMatrix apply_rankk(const HermitianMatrix& a, const RankKUpdate& u);

/// A^{-1} = R^{-1} - R^{-1} B (Xi^{-1} + B^H R^{-1} B)^{-1} B^H R^{-1}.
/// Columns with exactly zero Xi entries are dropped first.
ComplexMatrix woodbury(const ComplexMatrix& r_inv, const RankKUpdate& u);

}  // namespace sr1r
