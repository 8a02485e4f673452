#pragma once

#include <span>
#include <vector>

#include "sr1r/errors.hpp"
#include "sr1r/matrix.hpp"

namespace sr1r {

/// Real spectrum sorted descending; validated on construction.
struct Spectrum {
  explicit Spectrum(std::vector<double> v);
  std::vector<double> values;
};

/// (theta_{N-1} + theta_{N-2}) / (-theta_0 + theta_{N-2}), the normalized
/// position of the smallest eigenvalue inside (-theta_0, -theta_{N-2});
/// lies in (0,1) exactly when the placement succeeded.
double theorem1_measure(const Spectrum& theta);

/// Elementary symmetric functions e_0..e_N of the given values, by
/// polynomial coefficient convolution.
std::vector<double> elementary_symmetric(std::span<const double> values);

/// Same with values[skip] removed.
std::vector<double> elementary_symmetric_without(std::span<const double> values,
                                                 std::size_t skip);

/// Characteristic polynomial det(diag(lambda) - xi p p^H - theta I)
/// evaluated through the elementary-symmetric-function expansion.
/// Guarded against coefficient overflow for N > 64.
double char_poly_eval(const Spectrum& lambda, std::span<const cplx> p, double xi, double theta);

/// Threshold xi above which the smallest eigenvalue of
/// diag(lambda) - xi p p^H turns negative:
/// e_N(lambda) / sum_k e_{N-1}(lambda without k) |p_k|^2.
double xi_perp(const Spectrum& lambda, std::span<const cplx> p);

/// The two eigenvalues of the 2x2 block mixing lambda_0 and lambda_{N-1}:
/// roots of t^2 - (l0 + lN1 - xi) t + l0 lN1 - xi (alpha^2 lN1 + beta^2 l0).
/// Returned with first >= second.
std::pair<double, double> subblock_eigs(double lambda0, double lambdaN1, double xi, double alpha,
                                        double beta);

struct ConvergenceFactors {
  double plain;             // lambda_1 / lambda_0
  double shifted_dominant;  // slowest surviving mode of the shifted iteration
  double shifted_best;      // best case when the start aligns with the target
};

ConvergenceFactors convergence_factors(const Spectrum& lambda);

/// Analytic parallel-depth and flop-count calculator; performs no timing.
struct CostReport {
  double algorithm_depth;  // regularization pipeline, iterative core excluded
  double flop_count;
  double schulz_depth;     // 2 i log2(N)
  double schulz_flops;     // (2 N^3 + N^2) i
  std::size_t n, m, tau0, tauN1, iterations;
};

CostReport cost_report(std::size_t n, std::size_t m, std::size_t tau0, std::size_t tauN1,
                       std::size_t iterations);

}  // namespace sr1r
