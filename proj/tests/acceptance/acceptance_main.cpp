// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails. Every tolerance is pinned here.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "nvn/darboux.hpp"
#include "nvn/exact_solutions.hpp"
#include "nvn/figures.hpp"
#include "nvn/integrator.hpp"
#include "nvn/observables.hpp"

using namespace nvn;

namespace {

int g_failures = 0;

void report(int id, const std::string& name, bool pass,
            const std::string& detail) {
  std::printf("[%s] criterion %2d: %s (%s)\n", pass ? "PASS" : "FAIL", id,
              name.c_str(), detail.c_str());
  if (!pass) ++g_failures;
}

void info(const std::string& text) {
  std::printf("       info: %s\n", text.c_str());
}

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> out;
  out.reserve(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i)
    out.push_back(lo + (hi - lo) * i / static_cast<double>(n - 1));
  return out;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

double seconds_since(
    const std::chrono::steady_clock::time_point& start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                       start)
      .count();
}

const double s7 = std::sqrt(7.0);
const double s15 = std::sqrt(15.0);

// Block-ordered diagonal limits as printed in the source material, mapped to
// the particle-order basis used by the library.
OperatorMatrix printed_asymptotic(int direction) {
  const int perm[4] = {0, 2, 1, 3};
  const double s = static_cast<double>(direction);
  // direction -1: (5-s7, 5+s7, 5-s15, 5+s15)/2, +1: the seed matrix
  Eigen::Vector4d block;
  block << 5.0 - s * s7, 5.0 + s * s7, 5.0 - s * s15, 5.0 + s * s15;
  if (direction > 0) block << 5.0 + s7, 5.0 - s7, 5.0 + s15, 5.0 - s15;
  OperatorMatrix m = OperatorMatrix::Zero(4, 4);
  for (int i = 0; i < 4; ++i) m(perm[i], perm[i]) = 0.5 * block(i);
  return m;
}

// ---------------------------------------------------------------------------

void criterion_1_and_2_and_9_closed(double* worst_drift_closed) {
  const auto start = std::chrono::steady_clock::now();
  const OperatorMatrix h = organism_hamiltonian();
  const FeedbackPolynomial sq = FeedbackPolynomial::square();
  const CompositeLayout layout = organism_layout();
  const auto fam = [](double t) { return organism_solution(t).matrix(); };

  double worst_res = 0.0, worst_red = 0.0;
  double e0 = 0.0;
  std::array<double, 4> m0{};
  double drift = 0.0;
  const auto ts = linspace(-10.0, 10.0, 2001);
  for (size_t i = 0; i < ts.size(); ++i) {
    const double t = ts[i];
    worst_res = std::max(worst_res, residual(fam, h, sq, t, 1e-4));

    const DensityState st = organism_solution(t);
    const auto curves = organism_reduced_eigenvalues(t);
    const RealVector r1 = partial_trace(st, layout, 0).spectrum() / st.trace();
    const RealVector r2 = partial_trace(st, layout, 1).spectrum() / st.trace();
    worst_red = std::max({worst_red, std::abs(r1(0) - curves.p1_low),
                          std::abs(r1(1) - curves.p1_high),
                          std::abs(r2(0) - curves.p2_low),
                          std::abs(r2(1) - curves.p2_high)});

    const double e = conserved_energy(st, h, sq);
    const auto mom = conserved_moments(st, 4);
    if (i == 0) {
      e0 = e;
      for (int n = 0; n < 4; ++n) m0[static_cast<size_t>(n)] = mom[static_cast<size_t>(n)];
    } else {
      drift = std::max(drift, std::abs(e - e0) / std::abs(e0));
      for (int n = 0; n < 4; ++n)
        drift = std::max(drift, std::abs(mom[static_cast<size_t>(n)] - m0[static_cast<size_t>(n)]) /
                                    std::abs(m0[static_cast<size_t>(n)]));
    }
  }
  const double elapsed = seconds_since(start);
  report(1, "organism residual, 2001 samples of [-10,10]",
         worst_res < 1e-6 && elapsed < 10.0,
         "max residual=" + fmt(worst_res) + " threshold=1e-6, runtime=" +
             fmt(elapsed) + "s");
  report(2, "organism reduced eigenvalues match the closed-form curves",
         worst_red < 1e-10, "max deviation=" + fmt(worst_red) +
                                " threshold=1e-10");
  *worst_drift_closed = std::max(*worst_drift_closed, drift);
}

void criterion_3() {
  const double scale = 1e-8 * organism_seed().norm();
  const double d_minus =
      (organism_interior(-10.0).matrix() - printed_asymptotic(-1)).norm();
  const double d_plus =
      (organism_interior(10.0).matrix() - printed_asymptotic(1)).norm();
  const OperatorMatrix seed_flow = unitary_conjugate_exp(
      organism_hamiltonian(), 50.0, organism_seed().matrix());
  const double d_traj =
      (organism_solution(10.0).matrix() - seed_flow).norm();
  const bool pass = d_minus < scale && d_plus < scale && d_traj < scale;
  report(3, "organism asymptotics against the printed limit matrices", pass,
         "|interior(-10)-limit|=" + fmt(d_minus) + ", |interior(10)-seed|=" +
             fmt(d_plus) + ", |rho1(10)-rho(10)|=" + fmt(d_traj) +
             ", threshold=" + fmt(scale));
  if (!pass) {
    const double c_minus = (organism_interior(-10.0).matrix() -
                            organism_interior_limit(-1).matrix())
                               .norm();
    const double c_plus = (organism_interior(10.0).matrix() -
                           organism_interior_limit(1).matrix())
                              .norm();
    info("the printed limit matrices transpose one population pair; the "
         "construction-derived limits are reached instead: "
         "|interior(-10)-limit|=" +
         fmt(c_minus) + ", |interior(10)-limit|=" + fmt(c_plus) +
         " (both below threshold " + fmt(1e-8 * organism_seed().norm()) + ")");
    info("the closed form satisfies the equation (criterion 1) and the "
         "reduced-eigenvalue curves (criterion 2), which pin this "
         "orientation of the diagonal");
  }
}

void criterion_4() {
  const CompositeLayout layout = organism_layout();
  double worst = 1e300;
  for (const double t : linspace(-10.0, 10.0, 201))
    worst = std::min(
        worst, ppt_is_positive(organism_solution(t), layout).min_eigenvalue);
  report(4, "organism partial transpose stays positive", worst >= -1e-10,
         "min eigenvalue=" + fmt(worst) + " threshold=-1e-10");
}

void criterion_5(double* worst_drift_closed) {
  const double pairs[3][2] = {{0.0, 0.0}, {150.0, 0.0}, {0.0, 150.0}};
  double worst_res = 0.0, worst_diag = 0.0, drift = 0.0;
  for (const auto& pr : pairs) {
    const MultiSpeciesConfig cfg = species_example_config(pr[0], pr[1]);
    const OperatorMatrix h = multispecies_hamiltonian(cfg);
    const FeedbackPolynomial f({0.0, 1.25, -0.25});
    const auto fam = [&cfg](double t) {
      return multispecies_solution(cfg, t).matrix();
    };
    const OperatorMatrix seed = multispecies_seed(cfg).matrix();
    double e0 = 0.0;
    std::array<double, 4> m0{};
    bool first = true;
    for (const double t : linspace(-30.0, 30.0, 401)) {
      worst_res = std::max(worst_res, residual(fam, h, f, t, 1e-4));
      const DensityState st = multispecies_solution(cfg, t);
      for (Eigen::Index i = 0; i < st.dim(); ++i)
        worst_diag =
            std::max(worst_diag, std::abs(st.matrix()(i, i) - seed(i, i)));
      const double e = conserved_energy(st, h, f);
      const auto mom = conserved_moments(st, 4);
      if (first) {
        e0 = e;
        for (int n = 0; n < 4; ++n) m0[static_cast<size_t>(n)] = mom[static_cast<size_t>(n)];
        first = false;
      } else {
        drift = std::max(drift, std::abs(e - e0) / std::abs(e0));
        for (int n = 0; n < 4; ++n)
          drift = std::max(drift, std::abs(mom[static_cast<size_t>(n)] - m0[static_cast<size_t>(n)]) /
                                      std::abs(m0[static_cast<size_t>(n)]));
      }
    }
  }
  report(5, "two-species worked example residual and static diagonal",
         worst_res < 1e-6 && worst_diag < 1e-10,
         "max residual=" + fmt(worst_res) + " threshold=1e-6, max diagonal "
         "drift=" + fmt(worst_diag) + " threshold=1e-10");
  *worst_drift_closed = std::max(*worst_drift_closed, drift);
}

void criterion_6_and_7(double* worst_drift_closed) {
  const double h0 = MutationParams::critical_strength();
  double worst_res = 0.0, worst_tr = 0.0, worst_spec = 0.0, drift = 0.0;
  for (const double hv : {h0 / 2.0, h0, 2.0 * h0}) {
    MutationParams p;
    p.feedback_strength = hv;
    const OperatorMatrix h = mutation3_hamiltonian(0);
    const FeedbackPolynomial f = FeedbackPolynomial::quadratic_mix(hv);
    const auto fam = [&p](double t) { return mutation3(p, t).matrix(); };
    const RealVector spectrum0 = mutation3(p, 0.0).spectrum();
    double e0 = 0.0;
    bool first = true;
    for (const double t : linspace(-50.0, 50.0, 401)) {
      worst_res = std::max(worst_res, residual(fam, h, f, t, 1e-4));
      const DensityState st = mutation3(p, t);
      worst_tr = std::max(worst_tr, std::abs(st.trace() - 1.0));
      worst_spec = std::max(
          worst_spec, (st.spectrum() - spectrum0).cwiseAbs().maxCoeff());
      const double e = conserved_energy(st, h, f);
      if (first) {
        e0 = e;
        first = false;
      } else if (std::abs(e0) > 1e-12) {
        drift = std::max(drift, std::abs(e - e0) / std::abs(e0));
      }
    }
  }
  report(6, "three-level switching family: residual, trace, spectrum",
         worst_res < 1e-6 && worst_tr < 1e-12 && worst_spec < 1e-10,
         "max residual=" + fmt(worst_res) + ", trace error=" + fmt(worst_tr) +
             ", spectrum drift=" + fmt(worst_spec));
  *worst_drift_closed = std::max(*worst_drift_closed, drift);

  // 90% -> 10% fall time of the first off-diagonal magnitude scales as 1/h
  MutationParams pc;
  pc.feedback_strength = h0;
  const double base = mutation3_switch_fall_time(pc) * h0;
  double worst_scaling = 0.0;
  for (const double hv : {h0 / 2.0, 2.0 * h0}) {
    MutationParams p;
    p.feedback_strength = hv;
    worst_scaling = std::max(
        worst_scaling,
        std::abs(mutation3_switch_fall_time(p) * hv - base) / base);
  }
  report(7, "switching duration scales as 1/h", worst_scaling < 0.05,
         "worst relative deviation=" + fmt(worst_scaling) + " threshold=0.05");
}

void criterion_8(double* rk4_drift) {
  const OperatorMatrix h = organism_hamiltonian();
  const FeedbackPolynomial sq = FeedbackPolynomial::square();
  const auto run = [&](double dt) {
    return integrate(organism_solution(-5.0), h, sq, -5.0, 5.0, dt,
                     IntegrateOptions{100, 1e-6});
  };
  const Trajectory t1 = run(1e-3);
  const Trajectory t2 = run(5e-4);
  const double e1 =
      (t1.states.back().matrix() - organism_solution(5.0).matrix()).norm();
  const double e2 =
      (t2.states.back().matrix() - organism_solution(5.0).matrix()).norm();
  const double ratio = e1 / e2;
  const bool pass = e1 < 1e-6 && ratio >= 12.0 && ratio <= 20.0;
  report(8, "integrator endpoint accuracy and halving ratio", pass,
         "endpoint error=" + fmt(e1) + " threshold=1e-6, halving ratio=" +
             fmt(ratio) + " window=[12,20]");
  if (!pass)
    info("fixed-step classical RK4 on this trajectory converges at fifth "
         "order (halving ratio 32), so the error reaches 1e-6 only below "
         "dt=5e-4; measured errors: dt=1e-3 -> " +
         fmt(e1) + ", dt=5e-4 -> " + fmt(e2));
  *rk4_drift = std::max(
      {t1.max_energy_drift(), t1.max_moment_drift(), t2.max_energy_drift(),
       t2.max_moment_drift()});
}

void criterion_9(double worst_drift_closed, double rk4_drift) {
  const bool pass = worst_drift_closed < 1e-6 && rk4_drift < 1e-5;
  report(9, "conserved quantities drift along every trajectory", pass,
         "closed forms=" + fmt(worst_drift_closed) +
             " threshold=1e-6, integrator=" + fmt(rk4_drift) +
             " threshold=1e-5");
}

void criterion_10() {
  const MultiSpeciesConfig cfg = species_example_config(0.0, 0.0);
  const Proposition p = superposition_projector(4, 0, 2);
  const Proposition p1 = superposition_projector(4, 0, 1);
  const auto reduced_at = [&](double t) {
    return multispecies_reduce_species1(cfg, multispecies_solution(cfg, t));
  };
  const double past = uncertainty_bound(p, p1, reduced_at(-60.0));
  const double future = uncertainty_bound(p, p1, reduced_at(60.0));
  double worst_violation = -1e300;
  for (const double t : linspace(-60.0, 60.0, 401)) {
    const DensityState r = reduced_at(t);
    const double lhs =
        proposition_deviation(p, r) * proposition_deviation(p1, r);
    worst_violation =
        std::max(worst_violation, uncertainty_bound(p, p1, r) - lhs);
  }
  const bool pass = past < 1e-6 && std::abs(future - 0.010811) <= 1e-4 &&
                    worst_violation < 1e-12;
  report(10, "uncertainty bound endpoints and full inequality", pass,
         "bound(-60)=" + fmt(past) + ", bound(+60)=" + fmt(future) +
             " target=0.010811+-1e-4, worst inequality violation=" +
             fmt(worst_violation));
}

void criterion_11() {
  std::mt19937 gen(123456);
  std::uniform_real_distribution<double> uni(-80.0, 80.0);
  double worst = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const SwitchingValues v =
        switching_functions(uni(gen), {uni(gen), uni(gen)});
    worst = std::max(worst,
                     std::abs(v.f0 * v.f0 + v.f1 * v.f1 - v.f * (1.0 - v.f)));
  }
  const SwitchingValues past = switching_functions(-1e3, {0.0, 0.0});
  const SwitchingValues future = switching_functions(1e3, {0.0, 0.0});
  const double asym = std::max({past.f, past.f0, past.f1,
                                std::abs(future.f - 1.0), future.f0,
                                future.f1});
  report(11, "switching-function identity and asymptotics",
         worst < 1e-12 && asym < 1e-12,
         "identity deviation=" + fmt(worst) + " threshold=1e-12, asymptotic "
         "deviation=" + fmt(asym));
}

void criterion_12() {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "nvn_acceptance_figs";
  fs::remove_all(dir);

  double slowest = 0.0;
  for (int id = 1; id <= 6; ++id) {
    FigureJob job;
    job.figure_id = id;
    job.out_dir = dir.string();
    const auto start = std::chrono::steady_clock::now();
    reproduce_figure(job);
    slowest = std::max(slowest, seconds_since(start));
  }

  // read figure 1 back and check the three regimes
  std::ifstream in(dir / "fig1.csv");
  std::map<double, std::map<double, double>> grid;  // t -> x -> p
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#' || line[0] == 't') continue;
    double t, x, p;
    if (std::sscanf(line.c_str(), "%lf,%lf,%lf", &t, &x, &p) == 3)
      grid[t][x] = p;
  }
  const auto& first = grid.begin()->second;   // t = -40
  const auto& last = grid.rbegin()->second;   // t = +40
  double still_lo = 0.0, still_hi = 0.0, jump = 0.0;
  for (const auto& [t, row] : grid) {
    for (const auto& [x, p] : row) {
      if (t < -35.0) still_lo = std::max(still_lo, std::abs(p - first.at(x)));
      if (t > 35.0) still_hi = std::max(still_hi, std::abs(p - last.at(x)));
    }
  }
  for (const auto& [x, p] : first) jump = std::max(jump, std::abs(last.at(x) - p));

  const bool pass = still_lo < 1e-3 && still_hi < 1e-3 && jump > 0.05 &&
                    slowest < 30.0;
  report(12, "figure data: three regimes detectable, jobs under 30 s", pass,
         "pre-switch drift=" + fmt(still_lo) + ", post-switch drift=" +
             fmt(still_hi) + " threshold=1e-3, asymptotic jump=" + fmt(jump) +
             " threshold=0.05, slowest job=" + fmt(slowest) + "s");
}

}  // namespace

int main() {
  std::printf("acceptance suite\n");
  double worst_drift_closed = 0.0;
  double rk4_drift = 0.0;

  criterion_1_and_2_and_9_closed(&worst_drift_closed);
  criterion_3();
  criterion_4();
  criterion_5(&worst_drift_closed);
  criterion_6_and_7(&worst_drift_closed);
  criterion_8(&rk4_drift);
  criterion_9(worst_drift_closed, rk4_drift);
  criterion_10();
  criterion_11();
  criterion_12();

  std::printf("acceptance: %d of 12 criteria passed\n", 12 - g_failures);
  return g_failures == 0 ? 0 : 1;
}
