#include "sr1r/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace sr1r {

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols) {
  if (rows == 0 || cols == 0) throw DimensionError("matrix dimensions must be at least 1x1");
}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (rows == 0 || cols == 0) throw DimensionError("matrix dimensions must be at least 1x1");
  if (entries_.size() != rows * cols)
    throw DimensionError("entry count does not match rows*cols");
  require_finite("matrix constructor");
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> d) {
  ComplexMatrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
  return out;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
  return out;
}

double ComplexMatrix::frobenius_norm() const {
  double sum = 0.0;
  for (const cplx& z : entries_) sum += std::norm(z);
  return std::sqrt(sum);
}

double ComplexMatrix::max_abs_entry() const {
  double best = 0.0;
  for (const cplx& z : entries_) best = std::max(best, std::abs(z));
  return best;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
  if (!same_shape(other)) throw DimensionError("shape mismatch in matrix addition");
  for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] += other.entries_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
  if (!same_shape(other)) throw DimensionError("shape mismatch in matrix subtraction");
  for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] -= other.entries_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx scale) {
  for (cplx& z : entries_) z *= scale;
  return *this;
}

void ComplexMatrix::require_finite(const char* what) const {
  for (const cplx& z : entries_) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
      throw NumericalError(std::string(what) + ": non-finite entry");
  }
}

ComplexMatrix multiply(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) throw DimensionError("shape mismatch in matrix product");
  const std::size_t n = a.rows(), k_dim = a.cols(), m = b.cols();
  ComplexMatrix c(n, m);
  // i-k-j order keeps the inner loop contiguous; the scalar real/imag form
  // avoids libgcc's checked complex multiply in the hot path.
  for (std::size_t i = 0; i < n; ++i) {
    cplx* ci = c.row(i);
    const cplx* ai = a.row(i);
    for (std::size_t k = 0; k < k_dim; ++k) {
      const double ar = ai[k].real(), im = ai[k].imag();
      if (ar == 0.0 && im == 0.0) continue;
      const cplx* bk = b.row(k);
      for (std::size_t j = 0; j < m; ++j) {
        const double br = bk[j].real(), bi = bk[j].imag();
        ci[j] += cplx(ar * br - im * bi, ar * bi + im * br);
      }
    }
  }
  return c;
}

std::vector<cplx> matvec(const ComplexMatrix& m, std::span<const cplx> v) {
  if (m.cols() != v.size()) throw DimensionError("shape mismatch in matrix-vector product");
  std::vector<cplx> out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    cplx acc = 0.0;
    const cplx* mi = m.row(i);
    for (std::size_t j = 0; j < v.size(); ++j) acc += mi[j] * v[j];
    out[i] = acc;
  }
  return out;
}

double vector_norm(std::span<const cplx> v) {
  double sum = 0.0;
  for (const cplx& z : v) sum += std::norm(z);
  return std::sqrt(sum);
}

cplx vdot(std::span<const cplx> x, std::span<const cplx> y) {
  if (x.size() != y.size()) throw DimensionError("shape mismatch in inner product");
  cplx acc = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) acc += std::conj(x[i]) * y[i];
  return acc;
}

HermitianMatrix::HermitianMatrix(ComplexMatrix m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols()) throw DimensionError("Hermitian matrix must be square");
  m_.require_finite("Hermitian constructor");
  const double tol = 1e-12 * m_.max_abs_entry();
  for (std::size_t i = 0; i < m_.rows(); ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      if (std::abs(m_(i, j) - std::conj(m_(j, i))) > tol)
        throw NumericalError("matrix is not conjugate-symmetric at (" + std::to_string(i) +
                             "," + std::to_string(j) + ")");
    }
  }
}

HermitianMatrix HermitianMatrix::identity(std::size_t n) {
  return HermitianBuilder::wrap(ComplexMatrix::identity(n));
}

HermitianMatrix HermitianMatrix::diagonal(std::span<const double> d) {
  return HermitianBuilder::wrap(ComplexMatrix::diagonal(d));
}

double HermitianMatrix::trace_real() const {
  double t = 0.0;
  for (std::size_t i = 0; i < n(); ++i) t += m_(i, i).real();
  return t;
}

HermitianMatrix gram(const ComplexMatrix& h) {
  const std::size_t n = h.rows(), m = h.cols();
  if (n > m)
    throw DimensionError("gram expects a wide channel (rows <= cols); transpose the input");
  ComplexMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const cplx* hi = h.row(i);
    for (std::size_t j = 0; j <= i; ++j) {
      const cplx* hj = h.row(j);
      cplx acc = 0.0;
      for (std::size_t k = 0; k < m; ++k) acc += hi[k] * std::conj(hj[k]);
      if (i == j) acc = cplx(acc.real(), 0.0);
      a(i, j) = acc;
      a(j, i) = std::conj(acc);
    }
  }
  return HermitianBuilder::wrap(std::move(a));
}

double frobenius_residual(const ComplexMatrix& a, const ComplexMatrix& x) {
  if (a.rows() != a.cols() || !a.same_shape(x))
    throw DimensionError("residual expects square matrices of equal size");
  ComplexMatrix ax = multiply(a, x);
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

double frobenius_residual(const HermitianMatrix& a, const ComplexMatrix& x) {
  return frobenius_residual(a.matrix(), x);
}

}  // namespace sr1r
