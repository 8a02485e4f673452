#include "sr1r/schulz.hpp"

#include <cmath>

namespace sr1r {

double gershgorin_omega(const ComplexMatrix& r) {
  if (r.rows() != r.cols()) throw DimensionError("gershgorin_omega expects a square matrix");
  if (r.max_abs_entry() == 0.0) throw NumericalError("gershgorin_omega of the zero matrix");
  const std::size_t n = r.rows();
  // G = R^H R; row-abs sums bound its spectral radius.
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double row_sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      cplx acc = 0.0;
      for (std::size_t k = 0; k < n; ++k) acc += std::conj(r(k, i)) * r(k, j);
      row_sum += std::abs(acc);
    }
    if (row_sum > worst) worst = row_sum;
  }
  return 1.0 / worst;
}

namespace {

double residual_from_product(const ComplexMatrix& ax) {
  double sum = 0.0;
  for (std::size_t i = 0; i < ax.rows(); ++i) {
    for (std::size_t j = 0; j < ax.cols(); ++j) {
      cplx d = ax(i, j);
      if (i == j) d -= 1.0;
      sum += std::norm(d);
    }
  }
  return std::sqrt(sum);
}

}  // namespace

InversionReport schulz_invert(const ComplexMatrix& a, double omega, const SchulzOptions& opts) {
  if (a.rows() != a.cols()) throw DimensionError("schulz_invert expects a square matrix");
  if (omega <= 0.0) throw NumericalError("schulz_invert needs a positive omega");

  InversionReport report;
  report.omega = omega;
  report.method_label = "schulz";
  report.inverse_estimate = a.adjoint() * cplx(omega, 0.0);

  const bool fixed = opts.fixed_iterations.has_value();
  const std::size_t budget = fixed ? *opts.fixed_iterations : opts.max_iterations;

  // The product A X_i both measures the residual and feeds the next
  // iterate, so the trace costs no extra multiplication.
  for (std::size_t i = 0;; ++i) {
    ComplexMatrix ax = multiply(a, report.inverse_estimate);
    const double residual = residual_from_product(ax);
    report.residual_trace.push_back(residual);
    report.final_residual = residual;
    if (residual > 1e6)
      throw NumericalError("Schulz iteration diverged; omega violates the spectral-radius bound");
    if (i >= budget) break;
    if (!fixed && residual <= opts.residual_tolerance) break;

    // X <- 2X - X (A X)
    ComplexMatrix xax = multiply(report.inverse_estimate, ax);
    report.inverse_estimate *= cplx(2.0, 0.0);
    report.inverse_estimate -= xax;
    ++report.iterations_run;
  }
  return report;
}

InversionReport schulz_invert(const HermitianMatrix& a, double omega, const SchulzOptions& opts) {
  return schulz_invert(a.matrix(), omega, opts);
}

}  // namespace sr1r
