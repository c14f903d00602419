#include "nvn/verify.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "nvn/csv.hpp"
#include "nvn/darboux.hpp"
#include "nvn/exact_solutions.hpp"
#include "nvn/integrator.hpp"
#include "nvn/observables.hpp"

namespace nvn {

bool VerifyReport::all_pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

std::string format_report(const VerifyReport& report) {
  std::ostringstream out;
  for (const auto& c : report.checks) {
    out << (c.pass ? "[PASS] " : "[FAIL] ") << c.name
        << ": measured=" << format_double(c.measured)
        << " threshold=" << format_double(c.threshold);
    if (!c.detail.empty()) out << " (" << c.detail << ")";
    out << "\n";
  }
  return out.str();
}

namespace {

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> out;
  out.reserve(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i)
    out.push_back(lo + (hi - lo) * i / static_cast<double>(n - 1));
  return out;
}

void check_below(VerifyReport& rep, const std::string& name, double measured,
                 double threshold, const std::string& detail = "") {
  rep.checks.push_back({name, measured, threshold, measured < threshold, detail});
}

void check_above(VerifyReport& rep, const std::string& name, double measured,
                 double threshold, const std::string& detail = "") {
  rep.checks.push_back({name, measured, threshold, measured > threshold, detail});
}

double drift_of(const std::vector<double>& values) {
  double worst = 0.0;
  for (const double v : values)
    worst = std::max(worst,
                     std::abs(v - values.front()) /
                         std::max(1e-300, std::abs(values.front())));
  return worst;
}

void organism_checks(VerifyReport& rep, int samples) {
  const OperatorMatrix h = organism_hamiltonian();
  const FeedbackPolynomial f = FeedbackPolynomial::square();
  const auto state = [](double t) { return organism_solution(t).matrix(); };

  double worst_res = 0.0, worst_spec = 0.0, worst_red = 0.0;
  double worst_ppt = 1e300;
  const RealVector spectrum0 = organism_seed().spectrum();
  const CompositeLayout layout = organism_layout();
  std::vector<double> energies, c2s;

  for (const double t : linspace(-10.0, 10.0, samples)) {
    const DensityState st = organism_solution(t);
    worst_res = std::max(worst_res, residual(state, h, f, t));
    worst_spec = std::max(
        worst_spec,
        (st.spectrum() - spectrum0).cwiseAbs().maxCoeff() /
            spectrum0.cwiseAbs().maxCoeff());
    const auto curves = organism_reduced_eigenvalues(t);
    const RealVector r1 = partial_trace(st, layout, 0).spectrum() / st.trace();
    const RealVector r2 = partial_trace(st, layout, 1).spectrum() / st.trace();
    worst_red = std::max(
        worst_red, std::max(std::abs(r1(0) - curves.p1_low),
                            std::abs(r1(1) - curves.p1_high)));
    worst_red = std::max(
        worst_red, std::max(std::abs(r2(0) - curves.p2_low),
                            std::abs(r2(1) - curves.p2_high)));
    worst_ppt = std::min(worst_ppt, ppt_is_positive(st, layout).min_eigenvalue);
    energies.push_back(conserved_energy(st, h, f));
    c2s.push_back(conserved_moments(st, 4)[1]);
  }
  check_below(rep, "organism_residual", worst_res, 1e-6);
  check_below(rep, "organism_isospectrality", worst_spec, 1e-10);
  check_below(rep, "organism_reduction_curves", worst_red, 1e-10);
  check_above(rep, "organism_ppt_min_eigenvalue", worst_ppt, -1e-10,
              "separable at every sampled time");
  check_below(rep, "organism_energy_drift", drift_of(energies), 1e-6);
  check_below(rep, "organism_moment_drift", drift_of(c2s), 1e-6);

  // dressing route reproduces the closed form
  const DarbouxParameters params = organism_darboux_parameters();
  double worst_dress = 0.0;
  for (const double t : linspace(-6.0, 6.0, 7)) {
    const DensityState dressed =
        darboux_dress(organism_seed(), h, f, params, t);
    worst_dress = std::max(
        worst_dress, (dressed.matrix() - organism_solution(t).matrix()).norm());
  }
  check_below(rep, "organism_darboux_equivalence", worst_dress, 1e-10);

  // fault injection: a 1e-3 dent in one entry must trip the residual oracle
  const auto dented = [](double t) {
    OperatorMatrix m = organism_solution(t).matrix();
    m(0, 2) += 1e-3;
    m(2, 0) += 1e-3;
    return m;
  };
  check_above(rep, "residual_detector_sensitivity",
              residual(dented, h, f, 1.0), 1e-4,
              "perturbed closed form must fail the oracle");
}

void mutation3_checks(VerifyReport& rep, int samples) {
  const double h0 = MutationParams::critical_strength();
  double worst_res = 0.0, worst_tr = 0.0, worst_spec = 0.0, worst_cross = 0.0;
  std::vector<double> energies;
  for (const double hval : {h0 / 2.0, h0, 2.0 * h0}) {
    MutationParams p;
    p.feedback_strength = hval;
    const OperatorMatrix h = mutation3_hamiltonian(0);
    const FeedbackPolynomial f = FeedbackPolynomial::quadratic_mix(hval);
    const auto state = [p](double t) { return mutation3(p, t).matrix(); };
    const RealVector spectrum0 = mutation3(p, 0.0).spectrum();
    energies.clear();
    for (const double t : linspace(-50.0, 50.0, samples)) {
      worst_res = std::max(worst_res, residual(state, h, f, t));
      const DensityState st = mutation3(p, t);
      worst_tr = std::max(worst_tr, std::abs(st.trace() - 1.0));
      worst_spec = std::max(worst_spec,
                            (st.spectrum() - spectrum0).cwiseAbs().maxCoeff());
      energies.push_back(conserved_energy(st, h, f));
    }
    check_below(rep, "mutation3_energy_drift_h=" + format_double(hval),
                drift_of(energies), 1e-6);
    for (const double t : linspace(-20.0, 20.0, 9)) {
      const DensityState direct = mutation3(p, t);
      const DensityState via = mutation3_via_multispecies(p, t);
      worst_cross =
          std::max(worst_cross, (direct.matrix() - via.matrix()).norm());
    }
  }
  check_below(rep, "mutation3_residual", worst_res, 1e-6);
  check_below(rep, "mutation3_trace_one", worst_tr, 1e-12);
  check_below(rep, "mutation3_isospectrality", worst_spec, 1e-10);
  check_below(rep, "mutation3_cross_derivation", worst_cross, 1e-8,
              "closed form vs multi-species construction");
}

void multispecies_checks(VerifyReport& rep, int samples) {
  const double pairs[3][2] = {{0.0, 0.0}, {150.0, 0.0}, {0.0, 150.0}};
  double worst_res = 0.0, worst_diag = 0.0;
  for (const auto& p : pairs) {
    const MultiSpeciesConfig cfg = species_example_config(p[0], p[1]);
    const OperatorMatrix h = multispecies_hamiltonian(cfg);
    const FeedbackPolynomial f = FeedbackPolynomial::quadratic_mix(cfg.h);
    const auto state = [cfg](double t) {
      return multispecies_solution(cfg, t).matrix();
    };
    const OperatorMatrix seed = multispecies_seed(cfg).matrix();
    for (const double t : linspace(-30.0, 30.0, samples)) {
      worst_res = std::max(worst_res, residual(state, h, f, t));
      const OperatorMatrix m = multispecies_solution(cfg, t).matrix();
      for (Eigen::Index i = 0; i < m.rows(); ++i)
        worst_diag = std::max(worst_diag, std::abs(m(i, i) - seed(i, i)));
    }
  }
  check_below(rep, "multispecies_residual", worst_res, 1e-6,
              "worked example, three (t0,t1) settings");
  check_below(rep, "multispecies_diagonal_static", worst_diag, 1e-10);
}

void switching_checks(VerifyReport& rep) {
  std::mt19937 gen(20240314);
  std::uniform_real_distribution<double> uni(-60.0, 60.0);
  double worst_identity = 0.0, worst_range = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const double t = uni(gen), t0 = uni(gen), t1 = uni(gen);
    const SwitchingValues v = switching_functions(t, {t0, t1});
    worst_identity = std::max(
        worst_identity, std::abs(v.f0 * v.f0 + v.f1 * v.f1 - v.f * (1.0 - v.f)));
    for (const double x : {v.f, v.f0, v.f1})
      worst_range = std::max(worst_range, std::max(-x, x - 1.0));
  }
  check_below(rep, "switching_identity", worst_identity, 1e-12,
              "F0^2 + F1^2 = F (1 - F)");
  check_below(rep, "switching_range", worst_range, 0.0 + 1e-15,
              "values stay inside [0,1]");

  const SwitchingValues lo = switching_functions(-1e3, {0.0, 0.0});
  const SwitchingValues hi = switching_functions(1e3, {0.0, 0.0});
  const double asym = std::max({lo.f, lo.f0, lo.f1, std::abs(hi.f - 1.0),
                                hi.f0, hi.f1});
  check_below(rep, "switching_asymptotics", asym, 1e-12);
}

void uncertainty_checks(VerifyReport& rep) {
  const MultiSpeciesConfig cfg = species_example_config(0.0, 0.0);
  const Proposition p = superposition_projector(4, 0, 2);
  const Proposition p1 = superposition_projector(4, 0, 1);
  double worst_violation = -1e300;
  for (const double t : linspace(-60.0, 60.0, 401)) {
    const DensityState reduced =
        multispecies_reduce_species1(cfg, multispecies_solution(cfg, t));
    const double lhs = proposition_deviation(p, reduced) *
                       proposition_deviation(p1, reduced);
    const double bound = uncertainty_bound(p, p1, reduced);
    worst_violation = std::max(worst_violation, bound - lhs);
  }
  check_below(rep, "uncertainty_inequality", worst_violation, 1e-12,
              "dP dP1 >= bound at 401 sample times");

  const auto bound_at = [&](double t) {
    const DensityState reduced =
        multispecies_reduce_species1(cfg, multispecies_solution(cfg, t));
    return uncertainty_bound(p, p1, reduced);
  };
  check_below(rep, "uncertainty_bound_past", bound_at(-60.0), 1e-6);
  const double s5 = std::sqrt(5.0);
  check_below(rep, "uncertainty_bound_future",
              std::abs(bound_at(60.0) - s5 / (12.0 * (15.0 + s5))), 1e-4);
}

void purify_checks(VerifyReport& rep) {
  std::mt19937 gen(987654321);
  std::normal_distribution<double> normal(0.0, 1.0);
  double worst = 0.0;
  for (Eigen::Index d = 2; d <= 8; ++d) {
    OperatorMatrix g(d, d);
    for (Eigen::Index i = 0; i < d; ++i)
      for (Eigen::Index j = 0; j < d; ++j)
        g(i, j) = Complex(normal(gen), normal(gen));
    const DensityState rho(OperatorMatrix(g * g.adjoint()));
    const ComplexVector psi = purify(rho);
    const DensityState full(OperatorMatrix(psi * psi.adjoint()), 1e-10, 1e-10);
    const DensityState back =
        partial_trace(full, CompositeLayout{{d, d}}, 1);
    worst = std::max(worst,
                     (back.matrix() - rho.matrix() / rho.trace()).norm());
  }
  check_below(rep, "purify_roundtrip", worst, 1e-12,
              "random states up to dim 8");
}

void integrator_checks(VerifyReport& rep) {
  const OperatorMatrix h = organism_hamiltonian();
  const FeedbackPolynomial f = FeedbackPolynomial::square();

  const auto endpoint_error = [&](double dt) {
    const Trajectory traj =
        integrate(organism_solution(-5.0), h, f, -5.0, 5.0, dt,
                  IntegrateOptions{1000000, 1e-6});
    return (traj.states.back().matrix() - organism_solution(5.0).matrix())
        .norm();
  };
  const double e1 = endpoint_error(1e-3);
  const double e2 = endpoint_error(5e-4);
  check_below(rep, "rk4_oracle_agreement", e1, 1e-4,
              "endpoint vs closed form at dt=1e-3");
  check_above(rep, "rk4_halving_ratio", e1 / e2, 12.0,
              "at least fourth-order improvement");

  const Trajectory traj =
      integrate(organism_solution(-5.0), h, f, -5.0, 5.0, 1e-3,
                IntegrateOptions{100, 1e-6});
  check_below(rep, "rk4_conservation_drift",
              std::max(traj.max_energy_drift(), traj.max_moment_drift()),
              1e-5);
  check_below(rep, "rk4_isospectrality_drift", traj.max_spectrum_drift(),
              1e-6);

  // strict feedback on a pure state follows the linear flow
  ComplexVector v(4);
  v << Complex(0.5, 0.0), Complex(0.5, 0.0), Complex(0.5, 0.0),
      Complex(0.0, 0.5);
  const DensityState pure(OperatorMatrix(v * v.adjoint()));
  const FeedbackPolynomial mix = FeedbackPolynomial::quadratic_mix(0.7);
  const Trajectory lin =
      integrate(pure, h, mix, 0.0, 10.0, 1e-3, IntegrateOptions{1000000, 1e-6});
  const OperatorMatrix expected =
      unitary_conjugate_exp(h, 10.0, pure.matrix());
  check_below(rep, "linear_limit_pure_state",
              (lin.states.back().matrix() - expected).norm(), 1e-6);

  // switching duration scales as 1/h
  const double h0 = MutationParams::critical_strength();
  double worst_scaling = 0.0;
  const auto fall = [](double hval) {
    MutationParams p;
    p.feedback_strength = hval;
    return mutation3_switch_fall_time(p);
  };
  const double base = fall(h0) * h0;
  for (const double hval : {h0 / 2.0, 2.0 * h0})
    worst_scaling =
        std::max(worst_scaling, std::abs(fall(hval) * hval - base) / base);
  check_below(rep, "mutation3_duration_scaling", worst_scaling, 0.05,
              "fall time proportional to 1/h");

  // interior switching tails decay like e^{-2|t|}: the 1/cosh(2t) entries
  // dominate the e^{-4|t|} diagonal relaxation
  const OperatorMatrix limit = organism_interior_limit(1).matrix();
  const double r2 = (organism_interior(2.0).matrix() - limit).norm();
  const double r8 = (organism_interior(8.0).matrix() - limit).norm();
  const double slope = std::log(r8 / r2) / 6.0;
  check_below(rep, "organism_tail_decay_rate", std::abs(slope + 2.0), 0.1,
              "log-slope of the interior tail");
}

}  // namespace

VerifyReport verify_suite(VerifyLevel level) {
  VerifyReport rep;
  const bool full = level == VerifyLevel::Full;
  organism_checks(rep, full ? 201 : 101);
  mutation3_checks(rep, full ? 101 : 41);
  multispecies_checks(rep, full ? 101 : 21);
  switching_checks(rep);
  uncertainty_checks(rep);
  purify_checks(rep);
  if (full) integrator_checks(rep);
  return rep;
}

}  // namespace nvn
