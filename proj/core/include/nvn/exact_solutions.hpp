#pragma once

#include <vector>

#include "nvn/darboux.hpp"
#include "nvn/density_state.hpp"
#include "nvn/feedback.hpp"

namespace nvn {

// ---------------------------------------------------------------------------
// Three-level self-switching family ("mutation3"). Trace-one 3x3 state on
// oscillator levels k, k+1, k+2 solving the equation with
// f(x) = (1-h) x + h x^2. The feedback strength h sets the switching rate
// gamma and the residual oscillation frequency omega0; alpha shifts the
// switching time.
// ---------------------------------------------------------------------------

struct MutationParams {
  double feedback_strength = 0.0;  // h
  double alpha = 1.0;
  int level = 0;  // k, lowest of the three occupied levels

  double omega0() const;
  double gamma() const;

  // Feedback strength at which omega0 vanishes (oscillation-free switching).
  static double critical_strength();
};

OperatorMatrix mutation3_hamiltonian(int level);
DensityState mutation3(const MutationParams& params, double t);

// Same family built through the multi-species machinery instead of the
// closed form; cross-derivation check. Undefined at the parameter pole
// h = T/(T-1) with T = (15+sqrt5)/2, where the auxiliary construction
// parameters pass through infinity.
DensityState mutation3_via_multispecies(const MutationParams& params, double t);

// Time for |rho_01(t)|^2 to fall from 90% to 10% of its peak; scales as 1/h.
double mutation3_switch_fall_time(const MutationParams& params);

// ---------------------------------------------------------------------------
// Two-qubit composite entity ("organism"). H = 2 sx (x) 1 + 1 (x) sz with no
// interaction term; the quadratic feedback f = x^2 couples the qubits. The
// factor order of all returned matrices is (particle 1) (x) (particle 2).
// ---------------------------------------------------------------------------

OperatorMatrix organism_hamiltonian();
DensityState organism_seed();                  // diagonalizes H per block
DensityState organism_interior(double t);      // co-rotating frame state
DensityState organism_solution(double t);      // e^{-5iHt} interior e^{5iHt}
DensityState organism_interior_limit(int direction);  // -1 or +1
CompositeLayout organism_layout();             // {2, 2}

// Dressing data (nu, a, chi0) reproducing organism_interior from the seed.
DarbouxParameters organism_darboux_parameters();

// ---------------------------------------------------------------------------
// Multi-species family. Two species with total-occupation Hamiltonian; the
// seed occupies levels k, k+m, k+2m of species one combined with levels
// 0..l of species two. Basis order is energy-major:
// |0_0>,...,|0_l>, |1_0>,...,|1_l>, |2_0>,...,|2_l>.
// ---------------------------------------------------------------------------

struct MultiSpeciesConfig {
  double a = 0.0;
  double b = 0.0;
  int m = 1;
  int k = 0;
  int l = 0;
  std::vector<Complex> alphas;  // l+1 entries
  std::vector<Complex> betas;   // l+1 entries
  double h = 0.0;

  Eigen::Index dim() const { return 3 * (l + 1); }
  double a_tilde() const { return 1.0 + h * (a - 1.0); }  // linearized rate
  bool oscillation_free() const;                          // h == 1/(1-a)
  void validate() const;  // positivity window 0 < 4m^2 < a^2+4b < a^2, etc.
};

OperatorMatrix multispecies_hamiltonian(const MultiSpeciesConfig& cfg);
DensityState multispecies_seed(const MultiSpeciesConfig& cfg);
OperatorMatrix multispecies_delta(const MultiSpeciesConfig& cfg);
ComplexVector multispecies_eigenvector(const MultiSpeciesConfig& cfg);
Complex multispecies_eigenvalue(const MultiSpeciesConfig& cfg);
DensityState multispecies_solution(const MultiSpeciesConfig& cfg, double t);

// Embedding of the 3(l+1)-dimensional compact basis into the full two-factor
// space (species-one levels 0..k+2m) (x) (species-two levels 0..l).
CompositeLayout multispecies_layout(const MultiSpeciesConfig& cfg);
OperatorMatrix multispecies_embed(const MultiSpeciesConfig& cfg,
                                  const OperatorMatrix& compact);
DensityState multispecies_reduce_species1(const MultiSpeciesConfig& cfg,
                                          const DensityState& state);
DensityState multispecies_reduce_species2(const MultiSpeciesConfig& cfg,
                                          const DensityState& state);

// The worked two-species example: a=5, b=-4, m=k=1, l=1, h=-1/4,
// alpha_j = 1/sqrt2, beta_0 = e^{t0/4}, beta_1 = e^{t1/4}.
MultiSpeciesConfig species_example_config(double t0, double t1);

// ---------------------------------------------------------------------------
// The three switching ratios governing every matrix element of the worked
// example, with D = e^{t/2} + e^{t0/2} + e^{t1/2}:
//   F = e^{t/2} / D,  F0 = e^{(t+t0)/4} / D,  F1 = e^{(t+t1)/4} / D.
// All lie in [0, 1] and satisfy F0^2 + F1^2 = F (1 - F).
// ---------------------------------------------------------------------------

struct SwitchingProfile {
  double t0 = 0.0;
  double t1 = 0.0;
};

struct SwitchingValues {
  double f;
  double f0;
  double f1;
};

SwitchingValues switching_functions(double t, const SwitchingProfile& profile);

}  // namespace nvn
