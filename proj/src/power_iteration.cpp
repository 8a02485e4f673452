#include "sr1r/power_iteration.hpp"

#include <cmath>

#include "sr1r/rng.hpp"

namespace sr1r {

PowerIterationResult power_iterate_from(const HermitianMatrix& g, const PowerIterationMode& mode,
                                        std::vector<cplx> start) {
  if (start.size() != g.n()) throw DimensionError("start vector length must match the matrix");
  double norm = vector_norm(start);
  if (norm == 0.0) throw NumericalError("power iteration started from the zero vector");

  double lambda_old = norm;
  for (cplx& z : start) z /= norm;

  PowerIterationResult result;
  result.eigenvector_estimate = std::move(start);
  result.eigenvalue_estimate = lambda_old;

  const std::size_t budget = mode.fixed_iterations.value_or(mode.max_cycles);
  for (std::size_t i = 0; i < budget; ++i) {
    std::vector<cplx> v = matvec(g.matrix(), result.eigenvector_estimate);
    const double lambda = vector_norm(v);
    if (lambda == 0.0)
      throw NumericalError("power iteration hit the null space; the iterate vanished");
    for (cplx& z : v) z /= lambda;
    result.eigenvector_estimate = std::move(v);
    result.eigenvalue_estimate = lambda;
    result.eigenvalue_trace.push_back(lambda);
    ++result.iterations_run;

    if (!mode.fixed_iterations && std::abs(lambda - lambda_old) < mode.tolerance) {
      result.converged_by_tolerance = true;
      break;
    }
    lambda_old = lambda;
  }
  return result;
}

PowerIterationResult power_iterate(const HermitianMatrix& g, const PowerIterationMode& mode,
                                   std::uint64_t seed) {
  Rng rng(seed, streams::kPowerStartTop);
  for (int attempt = 0; attempt < 2; ++attempt) {
    std::vector<cplx> start(g.n());
    for (cplx& z : start) z = rng.next_complex_gaussian();
    if (vector_norm(start) == 0.0) continue;  // redraw once
    return power_iterate_from(g, mode, std::move(start));
  }
  throw NumericalError("random start vector was numerically zero twice");
}

HermitianMatrix shifted_matrix(const HermitianMatrix& a) {
  const std::size_t n = a.n();
  const double gamma = a.trace_real();
  ComplexMatrix phi(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) phi(i, j) = -a(i, j);
    phi(i, i) = cplx(gamma - a(i, i).real(), 0.0);
  }
  return HermitianBuilder::wrap(std::move(phi));
}

PowerIterationResult smallest_eigvec(const HermitianMatrix& a, std::size_t tau,
                                     std::uint64_t seed) {
  Rng rng(seed, streams::kPowerStartBottom);
  HermitianMatrix phi = shifted_matrix(a);
  for (int attempt = 0; attempt < 2; ++attempt) {
    std::vector<cplx> start(a.n());
    for (cplx& z : start) z = rng.next_complex_gaussian();
    if (vector_norm(start) == 0.0) continue;
    return power_iterate_from(phi, PowerIterationMode::fixed(tau), std::move(start));
  }
  throw NumericalError("random start vector was numerically zero twice");
}

}  // namespace sr1r
