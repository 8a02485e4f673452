#include "sr1r/preconditioners.hpp"

#include <cmath>

namespace sr1r {

std::pair<ComplexMatrix, ComplexMatrix> split_dl(const ComplexMatrix& a) {
  if (a.rows() != a.cols()) throw DimensionError("split_dl expects a square matrix");
  const std::size_t n = a.rows();
  ComplexMatrix d(n, n), l(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    d(i, i) = a(i, i);
    for (std::size_t j = 0; j < i; ++j) l(i, j) = a(i, j);
  }
  return {std::move(d), std::move(l)};
}

namespace {

void require_nonzero_diagonal(const ComplexMatrix& a) {
  for (std::size_t i = 0; i < a.rows(); ++i)
    if (std::abs(a(i, i)) == 0.0)
      throw NumericalError("zero diagonal entry at row " + std::to_string(i));
}

}  // namespace

ComplexMatrix preconditioner_matrix(const HermitianMatrix& a, PreconditionerKind kind) {
  require_nonzero_diagonal(a.matrix());
  auto [d, l] = split_dl(a.matrix());
  switch (kind) {
    case PreconditionerKind::Jacobi:
      return d;
    case PreconditionerKind::GaussSeidel:
      return d + l;
    case PreconditionerKind::Ssor: {
      ComplexMatrix dl = d + l;
      ComplexMatrix d_inv(a.n(), a.n());
      for (std::size_t i = 0; i < a.n(); ++i) d_inv(i, i) = 1.0 / d(i, i);
      return multiply(multiply(dl, d_inv), dl.adjoint());
    }
  }
  throw ConfigError("unknown preconditioner kind");
}

ComplexMatrix lower_triangular_inverse(const ComplexMatrix& t) {
  if (t.rows() != t.cols()) throw DimensionError("triangular inverse expects a square matrix");
  const std::size_t n = t.rows();
  for (std::size_t i = 0; i < n; ++i)
    if (std::abs(t(i, i)) == 0.0)
      throw NumericalError("singular triangular matrix (zero diagonal at " + std::to_string(i) +
                           ")");
  ComplexMatrix inv(n, n);
  // Forward substitution, one right-hand basis vector per column.
  for (std::size_t col = 0; col < n; ++col) {
    inv(col, col) = 1.0 / t(col, col);
    for (std::size_t i = col + 1; i < n; ++i) {
      cplx acc = 0.0;
      for (std::size_t k = col; k < i; ++k) acc += t(i, k) * inv(k, col);
      inv(i, col) = -acc / t(i, i);
    }
  }
  return inv;
}

ComplexMatrix preconditioner_inverse(const HermitianMatrix& a, PreconditionerKind kind) {
  require_nonzero_diagonal(a.matrix());
  auto [d, l] = split_dl(a.matrix());
  switch (kind) {
    case PreconditionerKind::Jacobi: {
      ComplexMatrix inv(a.n(), a.n());
      for (std::size_t i = 0; i < a.n(); ++i) inv(i, i) = 1.0 / d(i, i);
      return inv;
    }
    case PreconditionerKind::GaussSeidel:
      return lower_triangular_inverse(d + l);
    case PreconditionerKind::Ssor: {
      ComplexMatrix t = lower_triangular_inverse(d + l);
      return multiply(t.adjoint(), multiply(d, t));
    }
  }
  throw ConfigError("unknown preconditioner kind");
}

InversionReport preconditioned_invert(const HermitianMatrix& a, PreconditionerKind kind,
                                      const SchulzOptions& opts) {
  ComplexMatrix p_inv = preconditioner_inverse(a, kind);
  ComplexMatrix r_pre = multiply(p_inv, a.matrix());

  InversionReport report = schulz_invert(r_pre, gershgorin_omega(r_pre), opts);
  report.inverse_estimate = multiply(report.inverse_estimate, p_inv);
  report.final_residual = frobenius_residual(a, report.inverse_estimate);
  report.method_label = preconditioner_name(kind);
  return report;
}

const char* preconditioner_name(PreconditionerKind kind) {
  switch (kind) {
    case PreconditionerKind::Jacobi:
      return "jacobi";
    case PreconditionerKind::GaussSeidel:
      return "gauss-seidel";
    case PreconditionerKind::Ssor:
      return "ssor";
  }
  return "unknown";
}

}  // namespace sr1r
