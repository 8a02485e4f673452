#pragma once

#include <vector>

#include "sr1r/matrix.hpp"

namespace sr1r {

/// Eigenvalues sorted descending with the matching unitary eigenvector
/// matrix (column k pairs with eigenvalues[k]).
struct SpectralDecomposition {
  std::vector<double> eigenvalues;
  ComplexMatrix eigenvectors;
};

/// Cyclic Jacobi rotations on the Hermitian input. Deterministic for a
/// fixed input; throws NumericalError if the off-diagonal Frobenius mass
/// does not drop below 1e-12 * ||A||_F within 100 sweeps.
SpectralDecomposition evd_hermitian(const HermitianMatrix& a);

/// Same rotation sweep without accumulating eigenvectors.
std::vector<double> hermitian_eigenvalues(const HermitianMatrix& a);

/// Ratio of largest to smallest singular value (absolute eigenvalues for
/// Hermitian input). Throws when the smallest is below 1e-14 times the
/// largest.
double condition_number(const HermitianMatrix& a);

/// Condition number of a general square matrix via the singular values of
/// its Gram matrix.
double condition_number_general(const ComplexMatrix& m);

/// U diag(1/lambda) U^H.
ComplexMatrix inverse_from_evd(const SpectralDecomposition& s);

}  // namespace sr1r
