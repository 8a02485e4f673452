#pragma once

#include <iosfwd>
#include <string>

#include "sr1r/matrix.hpp"

namespace sr1r {

/// Text format: first line "N M", then N*M lines of "re im" in row-major
/// order. Written with enough digits to round-trip doubles exactly.
ComplexMatrix read_matrix(std::istream& in);
ComplexMatrix read_matrix_file(const std::string& path);

void write_matrix(std::ostream& out, const ComplexMatrix& m);
void write_matrix_file(const std::string& path, const ComplexMatrix& m);

/// Loads a square matrix and validates conjugate symmetry; parse and
/// validation failures name the offending line or entry.
HermitianMatrix read_hermitian_file(const std::string& path);

}  // namespace sr1r
