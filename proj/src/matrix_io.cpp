#include "sr1r/matrix_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace sr1r {

ComplexMatrix read_matrix(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ConfigError("matrix file is empty");
  std::istringstream header(line);
  long long rows = 0, cols = 0;
  if (!(header >> rows >> cols) || rows < 1 || cols < 1)
    throw ConfigError("matrix file line 1: expected 'N M' with positive dimensions");

  ComplexMatrix m(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols));
  const std::size_t total = static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols);
  for (std::size_t k = 0; k < total; ++k) {
    if (!std::getline(in, line))
      throw ConfigError("matrix file line " + std::to_string(k + 2) + ": unexpected end of file");
    std::istringstream entry(line);
    double re = 0.0, im = 0.0;
    if (!(entry >> re >> im))
      throw ConfigError("matrix file line " + std::to_string(k + 2) + ": expected 're im'");
    m(k / static_cast<std::size_t>(cols), k % static_cast<std::size_t>(cols)) = cplx(re, im);
  }
  m.require_finite("matrix file");
  return m;
}

ComplexMatrix read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open matrix file '" + path + "'");
  return read_matrix(in);
}

void write_matrix(std::ostream& out, const ComplexMatrix& m) {
  out << m.rows() << " " << m.cols() << "\n";
  char buf[64];
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const cplx z = m(i, j);
      std::snprintf(buf, sizeof(buf), "%.17g %.17g", z.real(), z.imag());
      out << buf << "\n";
    }
  }
}

void write_matrix_file(const std::string& path, const ComplexMatrix& m) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open '" + path + "' for writing");
  write_matrix(out, m);
}

HermitianMatrix read_hermitian_file(const std::string& path) {
  ComplexMatrix m = read_matrix_file(path);
  if (m.rows() != m.cols())
    throw ConfigError("Hermitian matrix file '" + path + "' must be square");
  return HermitianMatrix(std::move(m));  // validation names the first bad (i,j)
}

}  // namespace sr1r
