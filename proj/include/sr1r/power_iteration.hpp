#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "sr1r/matrix.hpp"

namespace sr1r {

struct PowerIterationResult {
  double eigenvalue_estimate = 0.0;        // ||A u||; nonnegative
  std::vector<cplx> eigenvector_estimate;  // unit norm
  std::size_t iterations_run = 0;
  bool converged_by_tolerance = false;
  std::vector<double> eigenvalue_trace;    // one entry per multiply-normalize cycle
};

/// Either run exactly `fixed_iterations` multiply-normalize cycles, or stop
/// once successive eigenvalue estimates differ by less than `tolerance`.
struct PowerIterationMode {
  static PowerIterationMode fixed(std::size_t iterations) {
    PowerIterationMode m;
    m.fixed_iterations = iterations;
    return m;
  }
  static PowerIterationMode with_tolerance(double eta, std::size_t max_cycles = 100000) {
    PowerIterationMode m;
    m.tolerance = eta;
    m.max_cycles = max_cycles;
    return m;
  }

  std::optional<std::size_t> fixed_iterations;
  double tolerance = 1e-6;
  std::size_t max_cycles = 100000;
};

/// Dominant-eigenpair estimate from a caller-supplied start vector.
PowerIterationResult power_iterate_from(const HermitianMatrix& g, const PowerIterationMode& mode,
                                        std::vector<cplx> start);

/// Dominant-eigenpair estimate from a seeded random start (i.i.d. complex
/// Gaussian entries, then normalized).
PowerIterationResult power_iterate(const HermitianMatrix& g, const PowerIterationMode& mode,
                                   std::uint64_t seed);

/// Phi = trace(A) I - A. For positive semi-definite A this is again
/// positive semi-definite, and its dominant eigenvector is the eigenvector
/// of A's smallest eigenvalue.
HermitianMatrix shifted_matrix(const HermitianMatrix& a);

/// Power iteration on the shifted matrix; the eigenvector estimate
/// approximates the smallest-eigenvalue eigenvector of A.
PowerIterationResult smallest_eigvec(const HermitianMatrix& a, std::size_t tau,
                                     std::uint64_t seed);

}  // namespace sr1r
