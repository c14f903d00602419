#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "nvn/darboux.hpp"
#include "nvn/exact_solutions.hpp"
#include "nvn/integrator.hpp"

using namespace nvn;

namespace {

const double s7 = std::sqrt(7.0);
const double s15 = std::sqrt(15.0);
const Complex I(0.0, 1.0);

}  // namespace

TEST_CASE("delta operator") {
  // f = identity with a = 1 cancels exactly
  const DensityState seed = organism_seed();
  CHECK(delta_operator(seed, FeedbackPolynomial::identity(), 1.0).norm() ==
        0.0);

  // quadratic feedback on the organism seed: block-constant diagonal
  const OperatorMatrix d =
      delta_operator(seed, FeedbackPolynomial::square(), 5.0);
  OperatorMatrix expected = OperatorMatrix::Zero(4, 4);
  expected(0, 0) = -4.5;  // particle-order basis: the sqrt7 block
  expected(1, 1) = -2.5;
  expected(2, 2) = -4.5;
  expected(3, 3) = -2.5;
  CHECK((d - expected).norm() < 1e-12);
  CHECK(commutes_with(d, organism_hamiltonian()));
  CHECK(commutes_with(d, seed.matrix()));
  CHECK_FALSE(is_identity_multiple(d));

  // multi-species seed: Delta = b I - m^2 (projector on the middle level)
  const MultiSpeciesConfig cfg = species_example_config(0.0, 0.0);
  const DensityState ms_seed = multispecies_seed(cfg);
  const OperatorMatrix d2 =
      delta_operator(ms_seed, FeedbackPolynomial::square(), cfg.a);
  CHECK((d2 - multispecies_delta(cfg)).norm() < 1e-12);
  CHECK(commutes_with(d2, multispecies_hamiltonian(cfg)));
}

TEST_CASE("predicates") {
  CHECK(is_identity_multiple(OperatorMatrix(3.7 *
                                            OperatorMatrix::Identity(5, 5))));
  OperatorMatrix almost = 2.0 * OperatorMatrix::Identity(3, 3);
  almost(0, 1) = 0.5;
  almost(1, 0) = 0.5;
  CHECK_FALSE(is_identity_multiple(almost));
}

TEST_CASE("degenerate dressing: chi0 an eigenvector of H and Delta") {
  // (1, 1)/sqrt2 in the sqrt7 block is an eigenvector of both, so the
  // commutator term vanishes and the dressed state is the rescaled seed flow
  const DensityState seed = organism_seed();
  const OperatorMatrix h = organism_hamiltonian();
  const FeedbackPolynomial f = FeedbackPolynomial::square();

  DarbouxParameters p;
  p.nu = Complex(0.0, -1.0);
  p.a = 5.0;
  p.chi0 = ComplexVector::Zero(4);
  p.chi0(0) = 1.0 / std::sqrt(2.0);  // particle-order indices of the block
  p.chi0(2) = 1.0 / std::sqrt(2.0);

  for (const double t : {-3.0, 0.0, 2.0}) {
    const DensityState dressed = darboux_dress(seed, h, f, p, t);
    const OperatorMatrix plain =
        unitary_conjugate_exp(h, 5.0 * t, seed.matrix());
    CHECK((dressed.matrix() - plain).norm() < 1e-12);
  }
}

TEST_CASE("dressing the organism seed reproduces the closed form") {
  const DensityState seed = organism_seed();
  const OperatorMatrix h = organism_hamiltonian();
  const FeedbackPolynomial f = FeedbackPolynomial::square();
  const DarbouxParameters p = organism_darboux_parameters();

  for (const double t : {-10.0, -2.0, 0.0, 1.3, 6.0, 10.0}) {
    const DensityState dressed = darboux_dress(seed, h, f, p, t);
    CHECK((dressed.matrix() - organism_solution(t).matrix()).norm() < 1e-11);
  }

  // spectrum and trace of the dressed state equal the seed's
  const DensityState far = darboux_dress(seed, h, f, p, 17.0);
  CHECK((far.spectrum() - seed.spectrum()).cwiseAbs().maxCoeff() < 1e-10);
  CHECK(far.trace() == doctest::Approx(seed.trace()).epsilon(1e-12));
}

TEST_CASE("dressing the multi-species seed reproduces the construction") {
  const MultiSpeciesConfig cfg = species_example_config(0.0, 0.0);
  const DensityState seed = multispecies_seed(cfg);
  const OperatorMatrix h = multispecies_hamiltonian(cfg);
  const FeedbackPolynomial f = FeedbackPolynomial::quadratic_mix(cfg.h);

  DarbouxParameters p;
  p.nu = Complex(0.0, -1.0);
  p.a = cfg.a_tilde();  // the linearization scalar of f, not of x^2
  p.chi0 = multispecies_eigenvector(cfg);

  for (const double t : {-12.0, 0.0, 7.0}) {
    const DensityState dressed = darboux_dress(seed, h, f, p, t);
    CHECK((dressed.matrix() - multispecies_solution(cfg, t).matrix()).norm() <
          1e-11);
  }
}

TEST_CASE("dressing preconditions") {
  const DensityState seed = organism_seed();
  const OperatorMatrix h = organism_hamiltonian();
  const FeedbackPolynomial f = FeedbackPolynomial::square();
  DarbouxParameters p = organism_darboux_parameters();

  DarbouxParameters real_nu = p;
  real_nu.nu = Complex(1.0, 0.0);
  CHECK_THROWS_AS(darboux_dress(seed, h, f, real_nu, 0.0),
                  std::invalid_argument);

  DarbouxParameters no_chi = p;
  no_chi.chi0 = ComplexVector::Zero(4);
  CHECK_THROWS_AS(darboux_dress(seed, h, f, no_chi, 0.0),
                  std::invalid_argument);

  DarbouxParameters short_chi = p;
  short_chi.chi0 = ComplexVector::Ones(3);
  CHECK_THROWS_AS(darboux_dress(seed, h, f, short_chi, 0.0),
                  std::invalid_argument);

  // wrong linearization scalar: Delta no longer commutes with the seed flow
  DarbouxParameters bad_a = p;
  bad_a.a = 1.0;
  CHECK_THROWS_AS(darboux_dress(seed, h, f, bad_a, 0.0),
                  std::invalid_argument);

  // identity feedback makes Delta a multiple of the identity for a = 0
  CHECK_THROWS_AS(
      darboux_dress(seed, h, FeedbackPolynomial::identity(),
                    DarbouxParameters{Complex(0, -1), 0.0,
                                      organism_darboux_parameters().chi0},
                    0.0),
      std::invalid_argument);
}

TEST_CASE("lax covariance report") {
  const DensityState seed = organism_seed();
  const OperatorMatrix h = organism_hamiltonian();
  const FeedbackPolynomial f = FeedbackPolynomial::square();
  const DarbouxParameters p = organism_darboux_parameters();

  std::vector<double> times;
  for (int i = -10; i <= 10; i += 2) times.push_back(static_cast<double>(i));
  const LaxReport report = lax_covariance_check(seed, h, f, p, times);

  CHECK(report.samples.size() == times.size());
  CHECK(report.all_below(1e-6));
  for (const auto& s : report.samples) {
    CHECK(s.residual < 1e-6);
    CHECK(s.spectrum_drift < 1e-10);
  }

  // chi0 is an exact eigenvector of (seed - conj(nu) H) with eigenvalue
  // (5 + i)/2, and the Rayleigh data reflects it
  CHECK(report.spectral_defect < 1e-12);
  CHECK(report.z_mu.real() == doctest::Approx(2.5).epsilon(1e-12));
  CHECK(report.z_mu.imag() == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(std::abs(report.z_nu - std::conj(report.z_mu)) < 1e-12);

  CHECK(report.delta_commutator_norm < 1e-12);
  CHECK_FALSE(report.delta_identity_multiple);
}

TEST_CASE("lax covariance across families") {
  // the three-level switch via the multi-species construction
  MutationParams mp;
  mp.feedback_strength = 0.8;
  const double big_t = (15.0 + std::sqrt(5.0)) / 2.0;
  const double denom = big_t - mp.feedback_strength * (big_t - 1.0);
  const double h_u = mp.feedback_strength / denom;

  MultiSpeciesConfig cfg;
  cfg.a = 5.0;
  cfg.b = -4.0;
  cfg.m = 1;
  cfg.k = 0;
  cfg.l = 0;
  cfg.h = h_u;
  cfg.alphas = {Complex(1.0, 0.0)};
  cfg.betas = {Complex(1.0, 0.0)};

  DarbouxParameters p;
  p.nu = Complex(0.0, -1.0);
  p.a = cfg.a_tilde();
  p.chi0 = multispecies_eigenvector(cfg);

  const LaxReport report = lax_covariance_check(
      multispecies_seed(cfg), multispecies_hamiltonian(cfg),
      FeedbackPolynomial::quadratic_mix(cfg.h), p, {-8.0, -1.0, 0.0, 2.0, 8.0});
  CHECK(report.all_below(1e-6));

  // degenerate chi0: dressed equals the seed flow, which also solves
  DarbouxParameters degenerate;
  degenerate.nu = Complex(0.0, -1.0);
  degenerate.a = 5.0;
  degenerate.chi0 = ComplexVector::Zero(4);
  degenerate.chi0(1) = 1.0;
  degenerate.chi0(3) = 1.0;  // the sqrt15 H eigenvector, also in one sector
  const LaxReport deg = lax_covariance_check(
      organism_seed(), organism_hamiltonian(), FeedbackPolynomial::square(),
      degenerate, {-2.0, 0.0, 2.0});
  CHECK(deg.all_below(1e-6));
}
