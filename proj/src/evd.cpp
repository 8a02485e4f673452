#include "sr1r/evd.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace sr1r {

namespace {

constexpr int kSweepBudget = 100;

double offdiagonal_norm(const ComplexMatrix& a) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (i != j) sum += std::norm(a(i, j));
  return std::sqrt(sum);
}

struct JacobiResult {
  std::vector<double> eigenvalues;  // descending
  ComplexMatrix eigenvectors;       // columns, only if accumulated
};

JacobiResult jacobi_sweeps(const HermitianMatrix& input, bool accumulate) {
  const std::size_t n = input.n();
  ComplexMatrix a = input.matrix();
  ComplexMatrix u = accumulate ? ComplexMatrix::identity(n) : ComplexMatrix();

  const double norm_a = a.frobenius_norm();
  const double target = 1e-12 * norm_a;
  // Entries this small cannot lift the off-diagonal mass above the target
  // even if every one of them survives, so rotating on them is wasted work.
  const double skip = (n > 1) ? target / (10.0 * static_cast<double>(n)) : 0.0;

  bool converged = (n == 1) || offdiagonal_norm(a) <= target;
  for (int sweep = 0; sweep < kSweepBudget && !converged; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const cplx apq = a(p, q);
        const double mag = std::abs(apq);
        if (mag <= skip) continue;

        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double tau = (aqq - app) / (2.0 * mag);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        const cplx phase = apq / mag;
        const cplx su = s * phase;
        const cplx su_conj = std::conj(su);

        for (std::size_t k = 0; k < n; ++k) {
          if (k == p || k == q) continue;
          const cplx akp = a(k, p);
          const cplx akq = a(k, q);
          a(k, p) = c * akp - su_conj * akq;
          a(k, q) = su * akp + c * akq;
          a(p, k) = std::conj(a(k, p));
          a(q, k) = std::conj(a(k, q));
        }
        a(p, p) = app - t * mag;
        a(q, q) = aqq + t * mag;
        a(p, q) = 0.0;
        a(q, p) = 0.0;

        if (accumulate) {
          for (std::size_t k = 0; k < n; ++k) {
            const cplx ukp = u(k, p);
            const cplx ukq = u(k, q);
            u(k, p) = c * ukp - su_conj * ukq;
            u(k, q) = su * ukp + c * ukq;
          }
        }
      }
    }
    converged = offdiagonal_norm(a) <= target;
  }
  if (!converged)
    throw NumericalError("Jacobi eigensolver did not reach the off-diagonal target in 100 sweeps");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return a(x, x).real() > a(y, y).real(); });

  JacobiResult result;
  result.eigenvalues.resize(n);
  for (std::size_t k = 0; k < n; ++k) result.eigenvalues[k] = a(order[k], order[k]).real();
  if (accumulate) {
    result.eigenvectors = ComplexMatrix(n, n);
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < n; ++i) result.eigenvectors(i, k) = u(i, order[k]);
  }
  return result;
}

}  // namespace

SpectralDecomposition evd_hermitian(const HermitianMatrix& a) {
  JacobiResult r = jacobi_sweeps(a, true);
  return {std::move(r.eigenvalues), std::move(r.eigenvectors)};
}

std::vector<double> hermitian_eigenvalues(const HermitianMatrix& a) {
  return jacobi_sweeps(a, false).eigenvalues;
}

double condition_number(const HermitianMatrix& a) {
  if (a.matrix().max_abs_entry() == 0.0)
    throw NumericalError("condition number of the zero matrix is undefined");
  std::vector<double> lambda = hermitian_eigenvalues(a);
  double largest = 0.0, smallest = 0.0;
  for (std::size_t k = 0; k < lambda.size(); ++k) {
    const double mag = std::abs(lambda[k]);
    if (k == 0 || mag > largest) largest = mag;
    if (k == 0 || mag < smallest) smallest = mag;
  }
  if (smallest <= 1e-14 * largest)
    throw NumericalError("matrix is numerically singular; condition number overflows");
  return largest / smallest;
}

double condition_number_general(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) throw DimensionError("condition number expects a square matrix");
  const std::size_t n = m.rows();
  ComplexMatrix g(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      cplx acc = 0.0;
      for (std::size_t k = 0; k < n; ++k) acc += std::conj(m(k, i)) * m(k, j);
      if (i == j) acc = cplx(acc.real(), 0.0);
      g(i, j) = acc;
      g(j, i) = std::conj(acc);
    }
  }
  std::vector<double> lambda = hermitian_eigenvalues(HermitianBuilder::wrap(std::move(g)));
  const double largest = lambda.front();
  const double smallest = lambda.back();
  if (largest <= 0.0) throw NumericalError("condition number of the zero matrix is undefined");
  if (smallest <= 1e-28 * largest)
    throw NumericalError("matrix is numerically singular; condition number overflows");
  return std::sqrt(largest / smallest);
}

ComplexMatrix inverse_from_evd(const SpectralDecomposition& s) {
  const std::size_t n = s.eigenvalues.size();
  double largest = 0.0;
  for (double v : s.eigenvalues) largest = std::max(largest, std::abs(v));
  for (double v : s.eigenvalues)
    if (std::abs(v) <= 1e-14 * largest)
      throw NumericalError("spectral inverse of a singular matrix");

  // U diag(1/lambda) U^H, lower triangle mirrored.
  ComplexMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      cplx acc = 0.0;
      for (std::size_t k = 0; k < n; ++k)
        acc += s.eigenvectors(i, k) * std::conj(s.eigenvectors(j, k)) / s.eigenvalues[k];
      out(i, j) = acc;
      out(j, i) = std::conj(acc);
    }
  }
  return out;
}

}  // namespace sr1r
