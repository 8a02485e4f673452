#include "sr1r/experiments.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <string>

#include "sr1r/analysis.hpp"
#include "sr1r/evd.hpp"
#include "sr1r/parallel.hpp"
#include "sr1r/preconditioners.hpp"
#include "sr1r/regularizers.hpp"
#include "sr1r/rng.hpp"

namespace sr1r {

namespace {

constexpr std::uint64_t kTrialSalt = 0x50000;

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t salt) {
  return Rng(master, salt).next_u64();
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

double to_db(double v) { return 10.0 * std::log10(v); }

double placement_measure(const std::vector<double>& theta) {
  try {
    return theorem1_measure(Spectrum(theta));
  } catch (const Error&) {
    return std::numeric_limits<double>::quiet_NaN();
  }
}

double kappa_abs(const std::vector<double>& eigenvalues) {
  double largest = 0.0, smallest = 0.0;
  for (std::size_t k = 0; k < eigenvalues.size(); ++k) {
    const double mag = std::abs(eigenvalues[k]);
    if (k == 0 || mag > largest) largest = mag;
    if (k == 0 || mag < smallest) smallest = mag;
  }
  if (smallest <= 1e-14 * largest) return std::numeric_limits<double>::infinity();
  return largest / smallest;
}

// Numerically singular products are reported as an infinite condition
// number rather than aborting the survey.
double kappa_general_safe(const ComplexMatrix& m) {
  try {
    return condition_number_general(m);
  } catch (const NumericalError&) {
    return std::numeric_limits<double>::infinity();
  }
}

struct CondRow {
  std::uint64_t seed;
  double original, sr1r_exact, pia, epia, jacobi, gs, ssor, rzf, bound, measure;
};

}  // namespace

void run_cond_cdf(const CondCdfConfig& config, std::uint64_t seed, std::ostream& out) {
  config.channel.validate();
  const double rzf_snr = std::pow(10.0, config.rzf_snr_db / 10.0);
  SchulzOptions selection;
  selection.fixed_iterations = config.selection_iterations;

  std::vector<CondRow> rows(config.trials);
  parallel_for(config.trials, config.threads, [&](std::size_t t) {
    CondRow& row = rows[t];
    row.seed = derive_seed(seed, kTrialSalt + t);
    const ChannelRealization chan = generate(config.channel, row.seed);
    const HermitianMatrix a = gram(chan.h);
    const SpectralDecomposition spec = evd_hermitian(a);
    const std::size_t n = a.n();

    row.original = kappa_abs(spec.eigenvalues);
    row.bound = spec.eigenvalues[1] / spec.eigenvalues[n - 2];
    row.rzf = (spec.eigenvalues[0] + 1.0 / rzf_snr) / (spec.eigenvalues[n - 1] + 1.0 / rzf_snr);

    const RankOneUpdate exact = sr1r_params_exact(spec);
    row.sr1r_exact = kappa_abs(hermitian_eigenvalues(apply_rank1(a, exact)));

    const RankOneUpdate pia = sr1r_params_pia(a, config.tau, row.seed);
    if (pia.degenerate) {
      row.pia = row.original;
      row.measure = std::numeric_limits<double>::quiet_NaN();
    } else {
      const std::vector<double> theta = hermitian_eigenvalues(apply_rank1(a, pia));
      row.pia = kappa_abs(theta);
      row.measure = placement_measure(theta);
    }

    const EpiaInversion epia =
        epia_invert_detailed(a, config.epia_candidates, config.tau, row.seed, selection);
    row.epia = epia.params.degenerate
                   ? row.original
                   : kappa_abs(hermitian_eigenvalues(apply_rank1(a, epia.params)));

    row.jacobi = kappa_general_safe(
        multiply(preconditioner_inverse(a, PreconditionerKind::Jacobi), a.matrix()));
    row.gs = kappa_general_safe(
        multiply(preconditioner_inverse(a, PreconditionerKind::GaussSeidel), a.matrix()));
    row.ssor = kappa_general_safe(
        multiply(preconditioner_inverse(a, PreconditionerKind::Ssor), a.matrix()));
  });

  out << "trial,seed,kappa_original,kappa_original_db,kappa_sr1r_exact,kappa_sr1r_exact_db,"
         "kappa_pia,kappa_pia_db,kappa_epia,kappa_epia_db,kappa_jacobi,kappa_jacobi_db,"
         "kappa_gs,kappa_gs_db,kappa_ssor,kappa_ssor_db,kappa_rzf,kappa_rzf_db,"
         "bound,bound_db,measure_pia\n";
  for (std::size_t t = 0; t < config.trials; ++t) {
    const CondRow& r = rows[t];
    out << t << ',' << r.seed;
    for (double v : {r.original, r.sr1r_exact, r.pia, r.epia, r.jacobi, r.gs, r.ssor, r.rzf,
                     r.bound})
      out << ',' << fmt(v) << ',' << fmt(to_db(v));
    out << ',' << fmt(r.measure) << '\n';
  }
}

void run_ser_sweep(const SerSweepConfig& config, std::uint64_t seed, std::ostream& out) {
  config.channel.validate();
  if (config.snr_db.empty() || config.precoders.empty() || config.methods.empty() ||
      config.budgets.empty())
    throw ConfigError("ser sweep needs nonempty precoder, method, budget and snr lists");

  struct Cell {
    PrecoderKind precoder;
    InversionMethod method;
    std::size_t budget;
    std::vector<SerResult> results;
  };
  std::vector<Cell> cells;
  for (PrecoderKind p : config.precoders)
    for (InversionMethod m : config.methods)
      for (std::size_t b : config.budgets) cells.push_back({p, m, b, {}});

  parallel_for(cells.size(), config.threads, [&](std::size_t i) {
    Cell& cell = cells[i];
    PrecoderConfig precoder;
    precoder.kind = cell.precoder;
    precoder.inversion.method = cell.method;
    precoder.inversion.schulz = config.schulz;
    if (cell.budget > 0) precoder.inversion.schulz.fixed_iterations = cell.budget;
    precoder.inversion.tau = config.tau;
    precoder.inversion.epia_candidates = config.epia_candidates;
    precoder.qam_order = config.qam_order;
    precoder.realizations = config.realizations;
    precoder.normalize_precoder = config.normalize_precoder;
    precoder.noise_free = config.noise_free;
    cell.results =
        ser_experiment(config.channel, precoder, config.snr_db, config.symbols_per_point, seed);
  });

  out << "model,precoder,inversion_method,iteration_budget,snr_db,symbols,errors,ser,seed\n";
  for (const Cell& cell : cells) {
    for (const SerResult& r : cell.results) {
      out << channel_model_name(config.channel.model) << ',' << precoder_name(cell.precoder)
          << ',' << inversion_method_name(cell.method) << ',' << cell.budget << ','
          << fmt(r.snr_db) << ',' << r.symbols_sent << ',' << r.symbol_errors << ','
          << fmt(r.ser) << ',' << seed << '\n';
    }
  }
}

const char* precoder_name(PrecoderKind kind) {
  return kind == PrecoderKind::Zf ? "zf" : "rzf";
}

PrecoderKind precoder_from_name(const std::string& name) {
  if (name == "zf") return PrecoderKind::Zf;
  if (name == "rzf") return PrecoderKind::Rzf;
  throw ConfigError("unknown precoder '" + name + "'");
}

}  // namespace sr1r
