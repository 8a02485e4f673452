#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "sr1r/analysis.hpp"
#include "sr1r/evd.hpp"
#include "sr1r/power_iteration.hpp"
#include "sr1r/regularizers.hpp"
#include "sr1r/rng.hpp"

using namespace sr1r;

namespace {

struct SpectrumFixture {
  HermitianMatrix a;
  SpectralDecomposition spec;  // exact by construction
};

/// Builds A = U diag(lambda) U^H from the eigenbasis of a random Hermitian
/// matrix, so both A and its exact decomposition are known.
SpectrumFixture with_spectrum(std::span<const double> lambda, std::uint64_t seed) {
  Rng rng(seed);
  const std::size_t n = lambda.size();
  ComplexMatrix base(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      const cplx z = rng.next_complex_gaussian();
      base(i, j) = z;
      base(j, i) = std::conj(z);
    }
    base(i, i) = rng.next_gaussian();
  }
  SpectralDecomposition s = evd_hermitian(HermitianMatrix(base));
  ComplexMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      cplx acc = 0.0;
      for (std::size_t k = 0; k < n; ++k)
        acc += lambda[k] * s.eigenvectors(i, k) * std::conj(s.eigenvectors(j, k));
      if (i == j) acc = cplx(acc.real(), 0.0);
      a(i, j) = acc;
      a(j, i) = std::conj(acc);
    }
  SpectrumFixture f;
  f.a = HermitianBuilder::wrap(std::move(a));
  f.spec.eigenvalues.assign(lambda.begin(), lambda.end());
  f.spec.eigenvectors = std::move(s.eigenvectors);
  return f;
}

std::vector<cplx> unit_column(const ComplexMatrix& m, std::size_t j) {
  std::vector<cplx> v(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) v[i] = m(i, j);
  return v;
}

/// The two mixed eigenvalues of the estimate-free construction, straight
/// from the quadratic the 2x2 block satisfies.
std::pair<double, double> block_roots(double l0, double ln1, double xi, double beta_sq) {
  const double b = l0 + ln1 - xi;
  const double c = l0 * ln1 - xi * ((1.0 - beta_sq) * ln1 + beta_sq * l0);
  const double root = std::sqrt(b * b - 4.0 * c);
  return {(b + root) / 2.0, (b - root) / 2.0};
}

RankOneUpdate exact_estimate_params(const SpectrumFixture& f) {
  double trace = 0.0;
  for (double v : f.spec.eigenvalues) trace += v;
  return sr1r_params_from_estimates(f.spec.eigenvalues[0], unit_column(f.spec.eigenvectors, 0),
                                    unit_column(f.spec.eigenvectors, f.a.n() - 1), trace);
}

}  // namespace

TEST_CASE("apply_rank1 basics") {
  const SpectrumFixture f = with_spectrum(std::vector<double>{3.0, 2.0, 1.0}, 1);
  RankOneUpdate zero{0.0, unit_column(f.spec.eigenvectors, 0), false};
  ComplexMatrix diff = apply_rank1(f.a, zero).matrix();
  diff -= f.a.matrix();
  CHECK(diff.frobenius_norm() == doctest::Approx(0.0));

  const HermitianMatrix two_i = HermitianBuilder::wrap(ComplexMatrix::identity(2) * cplx(2.0, 0.0));
  const RankOneUpdate u{1.0, {cplx(1.0), cplx(0.0)}, false};
  const HermitianMatrix r = apply_rank1(two_i, u);
  CHECK(r(0, 0).real() == doctest::Approx(1.0));
  CHECK(r(1, 1).real() == doctest::Approx(2.0));
  CHECK(std::abs(r(0, 1)) == doctest::Approx(0.0));
}

TEST_CASE("estimate-free construction on the reference spectrum") {
  const std::vector<double> lambda{1000.0, 100.0, 1.0, 0.1};
  const SpectrumFixture f = with_spectrum(lambda, 2);
  const RankOneUpdate u = exact_estimate_params(f);

  const double trace = 1101.1;
  const double beta = (trace - 1000.0) / (3.0 * 1000.0);
  CHECK(beta == doctest::Approx(0.0337).epsilon(1e-3));
  CHECK(u.xi == doctest::Approx(1000.0).epsilon(1e-12));
  CHECK_FALSE(u.degenerate);
  // The mixing weight sits inside the admissible band
  // lambda_{N-2}/lambda_0 << beta < lambda_1/lambda_0.
  CHECK(beta > 10.0 * (1.0 / 1000.0));
  CHECK(beta < 100.0 / 1000.0);

  const auto [x1, x2] = block_roots(1000.0, 0.1, 1000.0, beta * beta);
  CHECK(x1 == doctest::Approx(33.75).epsilon(1e-2));
  CHECK(x2 == doctest::Approx(-33.65).epsilon(1e-2));

  const std::vector<double> theta = hermitian_eigenvalues(apply_rank1(f.a, u));
  CHECK(theta[0] == doctest::Approx(100.0).epsilon(1e-9));
  CHECK(theta[1] == doctest::Approx(x1).epsilon(1e-9));
  CHECK(theta[2] == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(theta[3] == doctest::Approx(x2).epsilon(1e-9));

  CHECK(condition_number(apply_rank1(f.a, u)) == doctest::Approx(100.0).epsilon(1e-6));
  CHECK(condition_number(f.a) == doctest::Approx(10000.0).epsilon(1e-6));
}

TEST_CASE("estimate-free construction flags a flat spectrum as degenerate") {
  const SpectrumFixture f = with_spectrum(std::vector<double>{2.0, 2.0, 2.0, 2.0}, 3);
  const RankOneUpdate u = exact_estimate_params(f);
  CHECK(u.degenerate);
  CHECK(vector_norm(u.b) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("full-knowledge construction examples") {
  // Mild spectrum: the pinned placement is infeasible, the fallback comes
  // out and still reaches the rank-1 bound for this shape.
  const SpectrumFixture mild = with_spectrum(std::vector<double>{100.0, 10.0, 2.0, 1.0}, 4);
  const RankOneUpdate u_mild = sr1r_params_exact(mild.spec);
  CHECK(u_mild.xi > 2.0 + 1.0);  // exceeds lambda_{N-2} + lambda_{N-1}
  CHECK(condition_number(apply_rank1(mild.a, u_mild)) == doctest::Approx(5.0).epsilon(1e-6));

  const SpectrumFixture flat = with_spectrum(std::vector<double>{3.0, 3.0, 3.0}, 5);
  CHECK_THROWS_AS(sr1r_params_exact(flat.spec), NumericalError);

  const SpectrumFixture ref = with_spectrum(std::vector<double>{1000.0, 100.0, 1.0, 0.1}, 6);
  const RankOneUpdate u_ref = sr1r_params_exact(ref.spec);
  const std::vector<double> theta = hermitian_eigenvalues(apply_rank1(ref.a, u_ref));
  CHECK(theta[0] == doctest::Approx(100.0).epsilon(1e-9));
}

TEST_CASE("full-knowledge construction achieves the bound on top-heavy spectra") {
  // Spectra with a near-tied top pair keep the pinned-placement path alive.
  const std::vector<double> lambda{1000.0, 999.0, 5.0, 1.0};
  const SpectrumFixture f = with_spectrum(lambda, 7);
  const RankOneUpdate u = sr1r_params_exact(f.spec);
  const double kappa = condition_number(apply_rank1(f.a, u));
  CHECK(kappa == doctest::Approx(999.0 / 5.0).epsilon(1e-6));
}

TEST_CASE("optimality ceiling over random spectra") {
  Rng rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> lambda(5);
    double prev = 0.1 + rng.next_double();
    for (int k = 4; k >= 0; --k) {
      lambda[k] = prev;
      prev *= 1.0 + 0.05 + rng.next_double() * 30.0;
    }
    const SpectrumFixture f = with_spectrum(lambda, 1000 + trial);
    const RankOneUpdate u = sr1r_params_exact(f.spec);
    const double kappa = condition_number(apply_rank1(f.a, u));
    const double bound = lambda[1] / lambda[3];
    CHECK(kappa >= bound * (1.0 - 1e-9));
  }
}

TEST_CASE("trace identity of the modified matrix") {
  Rng rng(23);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> lambda{9.0 + rng.next_double(), 5.0, 2.0, 1.0 + rng.next_double()};
    std::sort(lambda.rbegin(), lambda.rend());
    const SpectrumFixture f = with_spectrum(lambda, 3000 + trial);
    std::vector<cplx> b(4);
    for (cplx& z : b) z = rng.next_complex_gaussian();
    const double norm = vector_norm(b);
    for (cplx& z : b) z /= norm;
    const double xi = 0.1 + 5.0 * rng.next_double();

    const HermitianMatrix theta = apply_rank1(f.a, {xi, b, false});
    double lhs = theta.trace_real();
    double rhs = -xi;
    for (double v : lambda) rhs += v;
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
  }
}

TEST_CASE("interlacing of the rank-1 modified spectrum (both signs)") {
  Rng rng(31);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> lambda(6);
    double v = 0.5 + rng.next_double() * 2.0;
    for (int k = 5; k >= 0; --k) {
      lambda[k] = v;
      v *= 1.1 + rng.next_double() * 3.0;
    }
    std::vector<cplx> p(6);
    for (cplx& z : p) z = rng.next_complex_gaussian();
    const double norm = vector_norm(p);
    for (cplx& z : p) z /= norm;
    const double tol = 1e-9 * lambda[0];

    const double xi_mag = (0.1 + rng.next_double() * 3.0) * lambda[0];
    const HermitianMatrix lam = HermitianMatrix::diagonal(lambda);

    std::vector<double> up = hermitian_eigenvalues(apply_rank1(lam, {-xi_mag, p, false}));
    CHECK(up[0] >= lambda[0] - tol);
    CHECK(up[0] <= lambda[0] + xi_mag + tol);
    for (std::size_t k = 1; k < 6; ++k) {
      CHECK(up[k] >= lambda[k] - tol);
      CHECK(up[k] <= lambda[k - 1] + tol);
    }

    std::vector<double> down = hermitian_eigenvalues(apply_rank1(lam, {xi_mag, p, false}));
    CHECK(down[5] >= lambda[5] - xi_mag - tol);
    CHECK(down[5] <= lambda[5] + tol);
    for (std::size_t k = 0; k < 5; ++k) {
      CHECK(down[k] >= lambda[k + 1] - tol);
      CHECK(down[k] <= lambda[k] + tol);
    }
  }
}

TEST_CASE("sherman-morrison on hand and oracle cases") {
  // xi = 0 passes the inverse through.
  ComplexMatrix r_inv = ComplexMatrix::identity(3);
  const RankOneUpdate zero{0.0, {cplx(1.0), cplx(0.0), cplx(0.0)}, false};
  ComplexMatrix same = sherman_morrison(r_inv, zero);
  same -= r_inv;
  CHECK(same.frobenius_norm() == doctest::Approx(0.0));

  // A = diag(2,1), xi = 1, b = e0: R = I, recovered inverse diag(0.5, 1).
  const RankOneUpdate u{1.0, {cplx(1.0), cplx(0.0)}, false};
  const ComplexMatrix a_inv = sherman_morrison(ComplexMatrix::identity(2), u);
  CHECK(a_inv(0, 0).real() == doctest::Approx(0.5));
  CHECK(a_inv(1, 1).real() == doctest::Approx(1.0));

  // Oracle equivalence on random positive-definite matrices.
  Rng rng(41);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 16;
    ComplexMatrix h(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < 2 * n; ++j) h(i, j) = rng.next_complex_gaussian();
    const HermitianMatrix a = gram(h);
    const SpectralDecomposition s = evd_hermitian(a);

    std::vector<cplx> b(n);
    for (cplx& z : b) z = rng.next_complex_gaussian();
    const double norm = vector_norm(b);
    for (cplx& z : b) z /= norm;
    const double xi = (0.2 + rng.next_double()) * s.eigenvalues[0];
    const RankOneUpdate update{xi, b, false};

    const HermitianMatrix r = apply_rank1(a, update);
    const std::vector<double> theta = hermitian_eigenvalues(r);
    double min_abs = std::abs(theta[0]);
    for (double t : theta) min_abs = std::min(min_abs, std::abs(t));
    if (min_abs <= 1e-8 * s.eigenvalues[0]) continue;  // xi landed on an eigenvalue

    const ComplexMatrix recovered = sherman_morrison(inverse_from_evd(evd_hermitian(r)), update);
    const ComplexMatrix oracle = inverse_from_evd(s);
    ComplexMatrix diff = recovered;
    diff -= oracle;
    CHECK(diff.frobenius_norm() <= 1e-9 * oracle.frobenius_norm());
  }
}

TEST_CASE("pia pipeline on the identity short-circuits through the degenerate flag") {
  const InversionReport rep = pia_invert(HermitianMatrix::identity(6), 1, 3);
  CHECK(rep.iterations_run <= 2);
  CHECK(rep.final_residual <= 1e-12);
  CHECK(rep.method_label == "pia-degenerate");
}

TEST_CASE("pia pipeline with exact parameters beats the plain iteration") {
  const std::vector<double> lambda{1000.0, 100.0, 1.0, 0.1};
  const SpectrumFixture f = with_spectrum(lambda, 8);
  const RankOneUpdate u = exact_estimate_params(f);

  SchulzOptions tight{.max_iterations = 200, .residual_tolerance = 1e-13};
  const HermitianMatrix r = apply_rank1(f.a, u);
  const InversionReport inner = schulz_invert(r, gershgorin_omega(r.matrix()), tight);
  const ComplexMatrix recovered = sherman_morrison(inner.inverse_estimate, u);
  CHECK(frobenius_residual(f.a, recovered) <= 1e-8);

  SchulzOptions matched{.max_iterations = 200, .residual_tolerance = 1e-8};
  const InversionReport on_r = schulz_invert(r, gershgorin_omega(r.matrix()), matched);
  const InversionReport on_a = schulz_invert(f.a, gershgorin_omega(f.a.matrix()), matched);
  CHECK(on_r.iterations_run < on_a.iterations_run);
}

TEST_CASE("pia improves conditioning on most random Gram matrices") {
  std::size_t improved = 0;
  const std::size_t trials = 300;
  for (std::uint64_t t = 0; t < trials; ++t) {
    Rng rng(7000 + t);
    const std::size_t n = 32;
    ComplexMatrix h(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) h(i, j) = rng.next_complex_gaussian();
    const HermitianMatrix a = gram(h);
    const RankOneUpdate u = sr1r_params_pia(a, 1, t);
    if (u.degenerate) continue;
    if (condition_number(apply_rank1(a, u)) <= condition_number(a)) ++improved;
  }
  CHECK(improved >= trials * 9 / 10);
}

TEST_CASE("e-PIA with one candidate reproduces the plain pipeline bitwise") {
  const std::vector<double> lambda{500.0, 60.0, 3.0, 1.0, 0.4};
  const SpectrumFixture f = with_spectrum(lambda, 9);
  const SchulzOptions opts{.max_iterations = 80, .residual_tolerance = 1e-9};
  const InversionReport pia = pia_invert(f.a, 1, 42, opts);
  const InversionReport epia = epia_invert(f.a, 1, 1, 42, opts);
  REQUIRE(pia.inverse_estimate.entries().size() == epia.inverse_estimate.entries().size());
  for (std::size_t k = 0; k < pia.inverse_estimate.entries().size(); ++k)
    CHECK(pia.inverse_estimate.entries()[k] == epia.inverse_estimate.entries()[k]);
  CHECK(pia.final_residual == epia.final_residual);
  CHECK(pia.iterations_run == epia.iterations_run);
}

TEST_CASE("e-PIA selection returns the candidate with the smallest residual") {
  const std::vector<double> lambda{800.0, 90.0, 2.0, 0.7};
  const SpectrumFixture f = with_spectrum(lambda, 10);
  const SchulzOptions opts{.fixed_iterations = 10};
  const std::size_t candidates = 5;
  const std::uint64_t seed = 77;

  const EpiaInversion selected = epia_invert_detailed(f.a, candidates, 1, seed, opts);
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t l = 0; l < candidates; ++l)
    best = std::min(best, pia_invert(f.a, 1, seed + l, opts).final_residual);
  CHECK(selected.report.final_residual == doctest::Approx(best).epsilon(1e-15));
}

TEST_CASE("e-PIA selection tracks candidate conditioning at an in-window budget") {
  // The residual rule discriminates candidates once the well-conditioned
  // ones have visibly out-converged the rest; budget 22 sits inside that
  // window for this spectrum. There the selected candidate carries the
  // minimum kappa(R) among the eight in ~95% of seeds.
  const std::vector<double> lambda{1000.0, 100.0, 1.0, 0.1};
  const SpectrumFixture f = with_spectrum(lambda, 11);
  const SchulzOptions opts{.fixed_iterations = 22};
  const std::size_t candidates = 8;

  std::size_t picked_min = 0, picked_best_half = 0;
  const std::size_t trials = 200;
  for (std::uint64_t seed = 0; seed < trials; ++seed) {
    const EpiaInversion selected = epia_invert_detailed(f.a, candidates, 1, seed, opts);

    std::vector<double> kappas(candidates);
    for (std::size_t l = 0; l < candidates; ++l) {
      const RankOneUpdate u = sr1r_params_pia(f.a, 1, seed + l);
      kappas[l] = condition_number(apply_rank1(f.a, u));
    }
    std::vector<double> sorted = kappas;
    std::sort(sorted.begin(), sorted.end());
    if (kappas[selected.selected_candidate] <= sorted[0] * (1.0 + 1e-12)) ++picked_min;
    if (kappas[selected.selected_candidate] <= sorted[candidates / 2 - 1]) ++picked_best_half;
  }
  CHECK(picked_min >= trials * 85 / 100);
  CHECK(picked_best_half >= trials * 97 / 100);
}

TEST_CASE("rzf shift examples") {
  const HermitianMatrix two =
      rzf_matrix(HermitianMatrix::identity(3), 1.0);
  for (std::size_t i = 0; i < 3; ++i) CHECK(two(i, i).real() == doctest::Approx(2.0));

  const HermitianMatrix a = HermitianMatrix::identity(4);
  const HermitianMatrix shifted = rzf_matrix(a, 100.0);
  ComplexMatrix diff = shifted.matrix();
  diff -= a.matrix();
  CHECK(diff.frobenius_norm() == doctest::Approx(std::sqrt(4.0) / 100.0));

  const std::vector<double> lambda{1000.0, 100.0, 1.0, 0.1};
  const SpectrumFixture f = with_spectrum(lambda, 12);
  CHECK(condition_number(rzf_matrix(f.a, 10.0)) ==
        doctest::Approx(1000.1 / 0.2).epsilon(1e-9));

  CHECK_THROWS_AS(rzf_matrix(a, 0.0), ConfigError);
}

TEST_CASE("rank-K exact construction on the reference spectrum") {
  const std::vector<double> lambda{8.0, 4.0, 2.0, 1.0};
  const SpectrumFixture f = with_spectrum(lambda, 13);
  const RankKUpdate u = rankk_params_exact(f.spec, 1, 1);
  REQUIRE(u.xi_diag.size() == 2);
  // Average of the untouched middle is 3; the moved eigenvalues land on it.
  CHECK(u.xi_diag[0] == doctest::Approx(8.0 - 3.0));
  CHECK(u.xi_diag[1] == doctest::Approx(1.0 - 3.0));

  const std::vector<double> theta = hermitian_eigenvalues(apply_rankk(f.a, u));
  CHECK(theta[0] == doctest::Approx(4.0).epsilon(1e-9));
  CHECK(theta[1] == doctest::Approx(3.0).epsilon(1e-9));
  CHECK(theta[2] == doctest::Approx(3.0).epsilon(1e-9));
  CHECK(theta[3] == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(condition_number(apply_rankk(f.a, u)) == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("rank-K trivial cases") {
  const SpectrumFixture flat = with_spectrum(std::vector<double>{2.0, 2.0, 2.0}, 14);
  const RankKUpdate u = rankk_params_exact(flat.spec, 1, 0);
  CHECK(u.xi_diag[0] == doctest::Approx(0.0));
  ComplexMatrix diff = apply_rankk(flat.a, u).matrix();
  diff -= flat.a.matrix();
  CHECK(diff.frobenius_norm() <= 1e-12);

  // K = 1 reduces to the rank-1 update with xi = lambda_0 - average.
  const std::vector<double> lambda{8.0, 4.0, 2.0, 1.0};
  const SpectrumFixture f = with_spectrum(lambda, 15);
  const RankKUpdate k1 = rankk_params_exact(f.spec, 1, 0);
  const double average = (4.0 + 2.0 + 1.0) / 3.0;
  const RankOneUpdate r1{8.0 - average, unit_column(f.spec.eigenvectors, 0), false};
  ComplexMatrix d2 = apply_rankk(f.a, k1).matrix();
  d2 -= apply_rank1(f.a, r1).matrix();
  CHECK(d2.frobenius_norm() <= 1e-12 * f.a.matrix().frobenius_norm());

  CHECK_THROWS_AS(rankk_params_exact(f.spec, 0, 0), DimensionError);
  CHECK_THROWS_AS(rankk_params_exact(f.spec, 2, 2), DimensionError);
}

TEST_CASE("perturbed rank-K construction") {
  const std::vector<double> lambda{8.0, 4.0, 2.0, 1.0};
  const SpectrumFixture f = with_spectrum(lambda, 16);

  const RankKUpdate clean = rankk_perturbed(f.spec, 1, 1, 0.0, 99);
  CHECK(clean.orthonormal_columns);
  const RankKUpdate exact = rankk_params_exact(f.spec, 1, 1);
  for (std::size_t k = 0; k < clean.b.entries().size(); ++k)
    CHECK(clean.b.entries()[k] == exact.b.entries()[k]);

  std::vector<double> kappas;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const RankKUpdate noisy = rankk_perturbed(f.spec, 1, 1, 0.015, seed);
    CHECK_FALSE(noisy.orthonormal_columns);
    kappas.push_back(condition_number(apply_rankk(f.a, noisy)));
  }
  std::sort(kappas.begin(), kappas.end());
  CHECK(std::isfinite(kappas[kappas.size() / 2]));
  CHECK(kappas[kappas.size() / 2] > 1.0);
}

TEST_CASE("middle eigenvalues of the exact rank-K update interlace") {
  // One-sided interlacing requires the subtracted update to be positive
  // semidefinite, i.e. downward moves only (K2 = 0). Mixed-sign updates
  // still obey the two-sided rank-K envelope, checked afterwards.
  Rng rng(53);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> lambda(7);
    double v = 0.3 + rng.next_double();
    for (int k = 6; k >= 0; --k) {
      lambda[k] = v;
      v *= 1.2 + rng.next_double() * 2.0;
    }
    const std::size_t k1 = 1 + (trial % 3);
    const SpectrumFixture f = with_spectrum(lambda, 5000 + trial);
    const RankKUpdate u = rankk_params_exact(f.spec, k1, 0);
    const std::vector<double> theta = hermitian_eigenvalues(apply_rankk(f.a, u));
    const double tol = 1e-9 * lambda[0];
    for (std::size_t idx = 0; idx < 7; ++idx) {
      CHECK(theta[idx] <= lambda[idx] + tol);
      if (idx + k1 < 7) CHECK(theta[idx] >= lambda[idx + k1] - tol);
    }
  }

  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> lambda(7);
    double v = 0.3 + rng.next_double();
    for (int k = 6; k >= 0; --k) {
      lambda[k] = v;
      v *= 1.2 + rng.next_double() * 2.0;
    }
    const std::size_t k1 = 1 + (trial % 2), k2 = 1 + (trial % 3 == 0 ? 1 : 0);
    const std::size_t k = k1 + k2;
    const SpectrumFixture f = with_spectrum(lambda, 6000 + trial);
    const RankKUpdate u = rankk_params_exact(f.spec, k1, k2);
    const std::vector<double> theta = hermitian_eigenvalues(apply_rankk(f.a, u));
    const double tol = 1e-9 * lambda[0];
    for (std::size_t idx = 0; idx < 7; ++idx) {
      const std::size_t up = idx >= k ? idx - k : 0;
      CHECK(theta[idx] <= lambda[up] + tol);
      if (idx + k < 7) CHECK(theta[idx] >= lambda[idx + k] - tol);
    }
  }
}

TEST_CASE("woodbury recovery") {
  const std::vector<double> lambda{8.0, 4.0, 2.0, 1.0};
  const SpectrumFixture f = with_spectrum(lambda, 18);
  const ComplexMatrix a_inv_oracle = inverse_from_evd(f.spec);

  // All-zero diagonal short-circuits.
  RankKUpdate none = rankk_params_exact(f.spec, 1, 1);
  none.xi_diag[0] = 0.0;
  none.xi_diag[1] = 0.0;
  const ComplexMatrix passthrough = woodbury(a_inv_oracle, none);
  for (std::size_t k = 0; k < passthrough.entries().size(); ++k)
    CHECK(passthrough.entries()[k] == a_inv_oracle.entries()[k]);

  // K = 1 agrees with the rank-1 recovery.
  const RankKUpdate k1 = rankk_params_exact(f.spec, 1, 0);
  const HermitianMatrix r1 = apply_rankk(f.a, k1);
  const ComplexMatrix r1_inv = inverse_from_evd(evd_hermitian(r1));
  const RankOneUpdate equivalent{k1.xi_diag[0], unit_column(f.spec.eigenvectors, 0), false};
  ComplexMatrix via_woodbury = woodbury(r1_inv, k1);
  ComplexMatrix via_sm = sherman_morrison(r1_inv, equivalent);
  via_woodbury -= via_sm;
  CHECK(via_woodbury.frobenius_norm() <= 1e-12 * via_sm.frobenius_norm());

  // Exact recovery through the K = 2 update.
  const RankKUpdate u = rankk_params_exact(f.spec, 1, 1);
  const HermitianMatrix r = apply_rankk(f.a, u);
  const ComplexMatrix recovered = woodbury(inverse_from_evd(evd_hermitian(r)), u);
  ComplexMatrix diff = recovered;
  diff -= a_inv_oracle;
  CHECK(diff.frobenius_norm() <= 1e-9 * a_inv_oracle.frobenius_norm());
}
