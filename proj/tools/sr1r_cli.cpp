#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "sr1r/analysis.hpp"
#include "sr1r/config.hpp"
#include "sr1r/evd.hpp"
#include "sr1r/matrix_io.hpp"
#include "sr1r/preconditioners.hpp"
#include "sr1r/regularizers.hpp"

namespace {

using nlohmann::json;

// Output is buffered until the command finishes, so a failing run never
// leaves a partial file behind.
void emit(const std::string& out_path, const std::string& body) {
  if (out_path.empty()) {
    std::cout << body;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw sr1r::ConfigError("cannot open '" + out_path + "' for writing");
  out << body;
}

int run_cond_cdf_cmd(const std::string& config_path, const std::string& seed_arg,
                     const std::string& out_path, std::size_t threads) {
  const sr1r::ParsedConfig cfg = sr1r::ParsedConfig::parse_file(config_path);
  sr1r::CondCdfConfig experiment = sr1r::cond_cdf_from_config(cfg);
  experiment.threads = threads;
  const std::uint64_t seed = sr1r::master_seed(cfg, seed_arg);
  std::ostringstream body;
  sr1r::run_cond_cdf(experiment, seed, body);
  emit(out_path, body.str());
  return 0;
}

int run_ser_sweep_cmd(const std::string& config_path, const std::string& seed_arg,
                      const std::string& out_path, std::size_t threads) {
  const sr1r::ParsedConfig cfg = sr1r::ParsedConfig::parse_file(config_path);
  sr1r::SerSweepConfig experiment = sr1r::ser_sweep_from_config(cfg);
  experiment.threads = threads;
  const std::uint64_t seed = sr1r::master_seed(cfg, seed_arg);
  std::ostringstream body;
  sr1r::run_ser_sweep(experiment, seed, body);
  emit(out_path, body.str());
  return 0;
}

sr1r::HermitianMatrix load_input_matrix(const std::string& path) {
  try {
    return sr1r::read_hermitian_file(path);
  } catch (const sr1r::NumericalError& e) {
    // Malformed input is a configuration problem, not a solver failure.
    throw sr1r::ConfigError(e.what());
  }
}

int run_invert_cmd(const std::string& matrix_path, const std::string& method_name,
                   std::uint64_t seed, std::size_t tau, std::size_t candidates,
                   std::size_t fixed_iterations, std::size_t max_iterations, double tolerance,
                   const std::string& out_path, const std::string& out_matrix_path) {
  const sr1r::HermitianMatrix a = load_input_matrix(matrix_path);

  sr1r::InverterConfig cfg;
  cfg.method = sr1r::inversion_method_from_name(method_name);
  cfg.schulz.max_iterations = max_iterations;
  cfg.schulz.residual_tolerance = tolerance;
  if (fixed_iterations > 0) cfg.schulz.fixed_iterations = fixed_iterations;
  cfg.tau = tau;
  cfg.epia_candidates = candidates;

  const sr1r::InversionReport report = sr1r::invert_hermitian(a, cfg, seed);

  json doc;
  doc["method"] = report.method_label;
  doc["n"] = a.n();
  doc["omega"] = report.omega;
  doc["iterations"] = report.iterations_run;
  doc["residual_trace"] = report.residual_trace;
  doc["final_residual"] = report.final_residual;
  emit(out_path, doc.dump(2) + "\n");
  if (!out_matrix_path.empty())
    sr1r::write_matrix_file(out_matrix_path, report.inverse_estimate);
  return 0;
}

int run_cost_cmd(long long n, long long m, long long tau0, long long tauN1, long long iterations,
                 const std::string& out_path) {
  if (n < 1 || m < 1 || tau0 < 0 || tauN1 < 0 || iterations < 0)
    throw sr1r::ConfigError("cost needs n, m >= 1 and nonnegative tau/iteration counts");
  const sr1r::CostReport r = sr1r::cost_report(
      static_cast<std::size_t>(n), static_cast<std::size_t>(m), static_cast<std::size_t>(tau0),
      static_cast<std::size_t>(tauN1), static_cast<std::size_t>(iterations));
  json doc;
  doc["n"] = r.n;
  doc["m"] = r.m;
  doc["tau0"] = r.tau0;
  doc["tauN1"] = r.tauN1;
  doc["iterations"] = r.iterations;
  doc["algorithm_depth"] = r.algorithm_depth;
  doc["flop_count"] = r.flop_count;
  doc["schulz_depth"] = r.schulz_depth;
  doc["schulz_flops"] = r.schulz_flops;
  emit(out_path, doc.dump(2) + "\n");
  return 0;
}

int run_gen_channel_cmd(const std::string& config_path, const std::string& seed_arg,
                        const std::string& out_path) {
  const sr1r::ParsedConfig cfg = sr1r::ParsedConfig::parse_file(config_path);
  const sr1r::ChannelConfig channel = sr1r::channel_from_config(cfg);
  const std::uint64_t seed = sr1r::master_seed(cfg, seed_arg);
  const sr1r::ChannelRealization chan = sr1r::generate(channel, seed);
  std::ostringstream body;
  sr1r::write_matrix(body, chan.h);
  emit(out_path, body.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rank-1 spectral regularization toolkit for iterative Gram-matrix inversion"};
  app.require_subcommand(1);

  std::size_t threads = 1;
  app.add_option("--threads", threads, "worker threads for trial fan-out")->capture_default_str();

  std::string config_path, seed_arg, out_path;

  CLI::App* cond = app.add_subcommand("cond-cdf", "condition-number survey CSV");
  cond->add_option("--config", config_path)->required();
  cond->add_option("--seed", seed_arg, "overrides [experiment] seed");
  cond->add_option("--out", out_path, "output file (stdout when omitted)");

  CLI::App* sweep = app.add_subcommand("ser-sweep", "symbol-error-rate sweep CSV");
  sweep->add_option("--config", config_path)->required();
  sweep->add_option("--seed", seed_arg);
  sweep->add_option("--out", out_path);

  std::string matrix_path, method_name = "pia", out_matrix_path;
  std::uint64_t invert_seed = 0;
  std::size_t tau = 1, candidates = 4, fixed_iterations = 0, max_iterations = 200;
  double tolerance = 1e-9;
  CLI::App* invert = app.add_subcommand("invert", "invert one Hermitian matrix file");
  invert->add_option("matrix", matrix_path, "matrix file ('N M' header, 're im' lines)")
      ->required();
  invert->add_option("--method", method_name, "oracle|schulz|pia|epia|jacobi|gs|ssor")
      ->capture_default_str();
  invert->add_option("--seed", invert_seed)->capture_default_str();
  invert->add_option("--tau", tau, "power-iteration cycles")->capture_default_str();
  invert->add_option("--candidates", candidates, "e-PIA candidates")->capture_default_str();
  invert->add_option("--fixed-iterations", fixed_iterations,
                     "run exactly this many Schulz iterations (0 = tolerance mode)");
  invert->add_option("--max-iterations", max_iterations)->capture_default_str();
  invert->add_option("--tolerance", tolerance)->capture_default_str();
  invert->add_option("--out", out_path, "JSON report path (stdout when omitted)");
  invert->add_option("--out-matrix", out_matrix_path, "also write the inverse estimate");

  long long cost_n = 0, cost_m = 0, cost_tau0 = 1, cost_tauN1 = 1, cost_iterations = 0;
  CLI::App* cost = app.add_subcommand("cost", "analytic depth/flop report JSON");
  cost->add_option("--n", cost_n)->required();
  cost->add_option("--m", cost_m)->required();
  cost->add_option("--tau0", cost_tau0)->capture_default_str();
  cost->add_option("--tau-n1", cost_tauN1)->capture_default_str();
  cost->add_option("--iterations", cost_iterations)->capture_default_str();
  cost->add_option("--out", out_path);

  CLI::App* gen = app.add_subcommand("gen-channel", "write one channel realization");
  gen->add_option("--config", config_path)->required();
  gen->add_option("--seed", seed_arg);
  gen->add_option("--out", out_path);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand(cond))
      return run_cond_cdf_cmd(config_path, seed_arg, out_path, threads);
    if (app.got_subcommand(sweep))
      return run_ser_sweep_cmd(config_path, seed_arg, out_path, threads);
    if (app.got_subcommand(invert))
      return run_invert_cmd(matrix_path, method_name, invert_seed, tau, candidates,
                            fixed_iterations, max_iterations, tolerance, out_path,
                            out_matrix_path);
    if (app.got_subcommand(cost))
      return run_cost_cmd(cost_n, cost_m, cost_tau0, cost_tauN1, cost_iterations, out_path);
    if (app.got_subcommand(gen))
      return run_gen_channel_cmd(config_path, seed_arg, out_path);
  } catch (const sr1r::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const sr1r::Error& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
