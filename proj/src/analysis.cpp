#include "sr1r/analysis.hpp"

#include <cmath>

namespace sr1r {

Spectrum::Spectrum(std::vector<double> v) : values(std::move(v)) {
  if (values.empty()) throw DimensionError("spectrum must be nonempty");
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) throw NumericalError("spectrum entries must be finite");
    if (i > 0 && values[i] > values[i - 1])
      throw NumericalError("spectrum must be sorted descending");
  }
}

double theorem1_measure(const Spectrum& theta) {
  const std::size_t n = theta.values.size();
  if (n < 3) throw DimensionError("placement measure needs at least 3 eigenvalues");
  const double t0 = theta.values[0];
  const double tn2 = theta.values[n - 2];
  const double tn1 = theta.values[n - 1];
  const double denom = -t0 + tn2;
  if (std::abs(denom) <= 1e-14 * std::max(std::abs(t0), std::abs(tn2)))
    throw NumericalError("placement measure denominator is degenerate");
  return (tn1 + tn2) / denom;
}

std::vector<double> elementary_symmetric(std::span<const double> values) {
  std::vector<double> e(values.size() + 1, 0.0);
  e[0] = 1.0;
  std::size_t used = 0;
  for (double v : values) {
    ++used;
    for (std::size_t k = used; k >= 1; --k) e[k] += v * e[k - 1];
  }
  return e;
}

std::vector<double> elementary_symmetric_without(std::span<const double> values,
                                                 std::size_t skip) {
  if (skip >= values.size()) throw DimensionError("skip index out of range");
  std::vector<double> reduced;
  reduced.reserve(values.size() - 1);
  for (std::size_t i = 0; i < values.size(); ++i)
    if (i != skip) reduced.push_back(values[i]);
  return elementary_symmetric(reduced);
}

namespace {

void require_unit_p(std::span<const cplx> p) {
  if (std::abs(vector_norm(p) - 1.0) > 1e-10)
    throw NumericalError("projection vector p must have unit norm");
}

}  // namespace

double char_poly_eval(const Spectrum& lambda, std::span<const cplx> p, double xi, double theta) {
  const std::size_t n = lambda.values.size();
  if (p.size() != n) throw DimensionError("p must match the spectrum length");
  if (n > 64)
    throw NumericalError("characteristic-polynomial coefficients overflow beyond N = 64");
  require_unit_p(p);

  const std::vector<double> e_full = elementary_symmetric(lambda.values);
  // weighted[k] = sum over directions of e_k with that eigenvalue removed,
  // weighted by the start-vector mass on the direction.
  std::vector<double> weighted(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    const double mass = std::norm(p[k]);
    if (mass == 0.0) continue;
    const std::vector<double> e_k = elementary_symmetric_without(lambda.values, k);
    for (std::size_t order = 0; order < n; ++order) weighted[order] += mass * e_k[order];
  }

  double value = std::pow(-theta, static_cast<double>(n));
  for (std::size_t order = 0; order < n; ++order) {
    const double coeff = e_full[order + 1] - xi * weighted[order];
    value += std::pow(-theta, static_cast<double>(n - 1 - order)) * coeff;
  }
  return value;
}

double xi_perp(const Spectrum& lambda, std::span<const cplx> p) {
  const std::size_t n = lambda.values.size();
  if (p.size() != n) throw DimensionError("p must match the spectrum length");
  require_unit_p(p);
  for (double v : lambda.values)
    if (v <= 0.0) throw NumericalError("xi threshold needs a strictly positive spectrum");

  const std::vector<double> e_full = elementary_symmetric(lambda.values);
  double denom = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double mass = std::norm(p[k]);
    if (mass == 0.0) continue;
    denom += mass * elementary_symmetric_without(lambda.values, k)[n - 1];
  }
  return e_full[n] / denom;
}

std::pair<double, double> subblock_eigs(double lambda0, double lambdaN1, double xi, double alpha,
                                        double beta) {
  if (std::abs(alpha * alpha + beta * beta - 1.0) > 1e-9)
    throw NumericalError("mixing weights must satisfy alpha^2 + beta^2 = 1");
  const double b = lambda0 + lambdaN1 - xi;
  const double c = lambda0 * lambdaN1 - xi * (alpha * alpha * lambdaN1 + beta * beta * lambda0);
  // Real symmetric block, so the discriminant cannot be negative; clamp
  // round-off.
  const double disc = std::max(b * b - 4.0 * c, 0.0);
  const double root = std::sqrt(disc);
  return {(b + root) / 2.0, (b - root) / 2.0};
}

ConvergenceFactors convergence_factors(const Spectrum& lambda) {
  const std::size_t n = lambda.values.size();
  if (n < 3) throw DimensionError("convergence factors need at least 3 eigenvalues");
  double trace = 0.0;
  for (double v : lambda.values) trace += v;
  const double l0 = lambda.values[0];
  const double ln2 = lambda.values[n - 2];
  const double ln1 = lambda.values[n - 1];
  ConvergenceFactors f{};
  f.plain = lambda.values[1] / l0;
  f.shifted_dominant = (trace - ln2) / (trace - ln1);
  f.shifted_best = (trace - l0) / (trace - ln1);
  return f;
}

CostReport cost_report(std::size_t n, std::size_t m, std::size_t tau0, std::size_t tauN1,
                       std::size_t iterations) {
  if (n < 1 || m < 1) throw ConfigError("cost report needs positive matrix dimensions");
  const double log_n = std::log2(static_cast<double>(n));
  const double log_m = std::log2(static_cast<double>(m));
  const double nd = static_cast<double>(n);
  const double md = static_cast<double>(m);
  const double taus = static_cast<double>(tau0 + tauN1);
  const double iters = static_cast<double>(iterations);

  CostReport r{};
  r.algorithm_depth = (taus + 7.0) * log_n + log_m;
  r.flop_count = nd * nd * nd + (taus + md + 7.0) * nd * nd + (md + log_n + 4.0) * nd;
  r.schulz_depth = 2.0 * iters * log_n;
  r.schulz_flops = (2.0 * nd * nd * nd + nd * nd) * iters;
  r.n = n;
  r.m = m;
  r.tau0 = tau0;
  r.tauN1 = tauN1;
  r.iterations = iterations;
  return r;
}

}  // namespace sr1r
