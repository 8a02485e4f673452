#pragma once

#include <stdexcept>
#include <string>

namespace sr1r {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shape or index mismatch between operands.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// An algorithm left its domain of validity (divergence, singularity,
/// failed convergence).
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// Invalid experiment or file configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace sr1r
