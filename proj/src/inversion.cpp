#include "sr1r/inversion.hpp"

#include "sr1r/evd.hpp"
#include "sr1r/preconditioners.hpp"
#include "sr1r/regularizers.hpp"

namespace sr1r {

InversionReport invert_hermitian(const HermitianMatrix& a, const InverterConfig& config,
                                 std::uint64_t seed) {
  switch (config.method) {
    case InversionMethod::Oracle: {
      InversionReport report;
      report.inverse_estimate = inverse_from_evd(evd_hermitian(a));
      report.final_residual = frobenius_residual(a, report.inverse_estimate);
      report.residual_trace.push_back(report.final_residual);
      report.method_label = "oracle";
      return report;
    }
    case InversionMethod::Schulz: {
      InversionReport report = schulz_invert(a, gershgorin_omega(a.matrix()), config.schulz);
      return report;
    }
    case InversionMethod::Pia:
      return pia_invert(a, config.tau, seed, config.schulz);
    case InversionMethod::Epia:
      return epia_invert(a, config.epia_candidates, config.tau, seed, config.schulz);
    case InversionMethod::Jacobi:
      return preconditioned_invert(a, PreconditionerKind::Jacobi, config.schulz);
    case InversionMethod::GaussSeidel:
      return preconditioned_invert(a, PreconditionerKind::GaussSeidel, config.schulz);
    case InversionMethod::Ssor:
      return preconditioned_invert(a, PreconditionerKind::Ssor, config.schulz);
  }
  throw ConfigError("unknown inversion method");
}

const char* inversion_method_name(InversionMethod method) {
  switch (method) {
    case InversionMethod::Oracle:
      return "oracle";
    case InversionMethod::Schulz:
      return "schulz";
    case InversionMethod::Pia:
      return "pia";
    case InversionMethod::Epia:
      return "epia";
    case InversionMethod::Jacobi:
      return "jacobi";
    case InversionMethod::GaussSeidel:
      return "gs";
    case InversionMethod::Ssor:
      return "ssor";
  }
  return "unknown";
}

InversionMethod inversion_method_from_name(const std::string& name) {
  if (name == "oracle") return InversionMethod::Oracle;
  if (name == "schulz") return InversionMethod::Schulz;
  if (name == "pia") return InversionMethod::Pia;
  if (name == "epia") return InversionMethod::Epia;
  if (name == "jacobi") return InversionMethod::Jacobi;
  if (name == "gs") return InversionMethod::GaussSeidel;
  if (name == "ssor") return InversionMethod::Ssor;
  throw ConfigError("unknown inversion method '" + name + "'");
}

}  // namespace sr1r
