#pragma once

#include <utility>

#include "sr1r/matrix.hpp"
#include "sr1r/schulz.hpp"

namespace sr1r {

enum class PreconditionerKind { Jacobi, GaussSeidel, Ssor };

/// A = D + L + L^H for Hermitian A: D keeps the diagonal, L the strict
/// lower triangle.
std::pair<ComplexMatrix, ComplexMatrix> split_dl(const ComplexMatrix& a);

/// Jacobi: P = D. Gauss-Seidel: P = D + L. SSOR: P = (D+L) D^{-1} (D+L)^H.
ComplexMatrix preconditioner_matrix(const HermitianMatrix& a, PreconditionerKind kind);

/// Forward substitution per column; throws on a zero diagonal entry.
ComplexMatrix lower_triangular_inverse(const ComplexMatrix& t);

/// P^{-1} assembled from triangular inverses only (SSOR uses
/// (D+L)^{-H} D (D+L)^{-1}), never from a dense inversion.
ComplexMatrix preconditioner_inverse(const HermitianMatrix& a, PreconditionerKind kind);

/// Schulz on R = P^{-1} A (generally non-Hermitian), then
/// A^{-1} = R^{-1} P^{-1}. Residual trace is against R; final_residual
/// against A.
InversionReport preconditioned_invert(const HermitianMatrix& a, PreconditionerKind kind,
                                      const SchulzOptions& opts = {});

const char* preconditioner_name(PreconditionerKind kind);

}  // namespace sr1r
