#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "sr1r/errors.hpp"

namespace sr1r {

using cplx = std::complex<double>;

/// Dense complex matrix, row-major.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols);
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix diagonal(std::span<const double> d);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  cplx& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

  cplx* row(std::size_t i) { return entries_.data() + i * cols_; }
  const cplx* row(std::size_t i) const { return entries_.data() + i * cols_; }

  const std::vector<cplx>& entries() const { return entries_; }

  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;

  double frobenius_norm() const;
  double max_abs_entry() const;

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(cplx scale);

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
  friend ComplexMatrix operator*(ComplexMatrix a, cplx s) { return a *= s; }
  friend ComplexMatrix operator*(cplx s, ComplexMatrix a) { return a *= s; }

  bool same_shape(const ComplexMatrix& other) const {
    return rows_ == other.rows_ && cols_ == other.cols_;
  }

  /// Throws if any entry is NaN or Inf.
  void require_finite(const char* what) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> entries_;
};

ComplexMatrix multiply(const ComplexMatrix& a, const ComplexMatrix& b);

std::vector<cplx> matvec(const ComplexMatrix& m, std::span<const cplx> v);

double vector_norm(std::span<const cplx> v);

/// Conjugated inner product <x, y> = sum conj(x_i) y_i.
cplx vdot(std::span<const cplx> x, std::span<const cplx> y);

/// Square matrix with conjugate symmetry validated on construction.
class HermitianMatrix {
 public:
  HermitianMatrix() = default;
  /// Validates |m(i,j) - conj(m(j,i))| <= 1e-12 * max_abs_entry.
  explicit HermitianMatrix(ComplexMatrix m);

  static HermitianMatrix identity(std::size_t n);
  static HermitianMatrix diagonal(std::span<const double> d);

  std::size_t n() const { return m_.rows(); }
  const ComplexMatrix& matrix() const { return m_; }

  const cplx& operator()(std::size_t i, std::size_t j) const { return m_(i, j); }

  double trace_real() const;

 private:
  friend HermitianMatrix gram(const ComplexMatrix& h);
  friend class HermitianBuilder;
  struct Unchecked {};
  HermitianMatrix(ComplexMatrix m, Unchecked) : m_(std::move(m)) {}

  ComplexMatrix m_;
};

/// Escape hatch for code that builds matrices already Hermitian by
/// construction (mirrored triangles), skipping the validation scan.
class HermitianBuilder {
 public:
  static HermitianMatrix wrap(ComplexMatrix m) {
    return HermitianMatrix(std::move(m), HermitianMatrix::Unchecked{});
  }
};

/// A = H H^H for an N x M channel with N <= M. The result is exactly
/// conjugate-symmetric (upper triangle mirrored from the computed lower).
HermitianMatrix gram(const ComplexMatrix& h);

/// || I - A X ||_F.
double frobenius_residual(const ComplexMatrix& a, const ComplexMatrix& x);
double frobenius_residual(const HermitianMatrix& a, const ComplexMatrix& x);

}  // namespace sr1r
