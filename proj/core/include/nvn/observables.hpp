#pragma once

#include <vector>

#include "nvn/density_state.hpp"

namespace nvn {

// -S = sum p ln p over the eigenvalues of rho normalized to unit trace.
// Natural logarithm; 0 <= S <= ln(dim).
double von_neumann_entropy(const DensityState& rho);

// Eigenvalue pairs of the two normalized single-particle reductions of the
// organism solution, as closed forms:
//   particle 1: 1/2 -+ (sqrt15 - sqrt7)/20 * tanh(2t)
//   particle 2: 1/2 -+ sqrt(26 + 2 sqrt105) / (40 cosh(2t))
struct OrganismReducedEigenvalues {
  double p1_low, p1_high;
  double p2_low, p2_high;
};
OrganismReducedEigenvalues organism_reduced_eigenvalues(double t);

// Full width at half maximum of the particle-2 entropy deviation from its
// asymptotic ln 2 plateau; the organism's joint-activity time scale.
double organism_life_span_fwhm();

struct PptCheck {
  bool positive;
  double min_eigenvalue;
};

// Peres-Horodecki criterion: eigen-check of the partial transpose of the
// normalized state, pass at tolerance -1e-10 * ||rho||_F of the normalized
// matrix. Requires a two-factor layout.
PptCheck ppt_is_positive(const DensityState& rho,
                         const CompositeLayout& layout);

// |Psi> = sum_e sqrt(p_e) |e_env> (x) |v_e> in the doubled space, with the
// standard basis as environment vectors; Tr_env |Psi><Psi| = rho / Tr rho.
// Layout of the output index: environment major, entity minor.
ComplexVector purify(const DensityState& rho);

// Projector with eigenvalues in {0, 1}; a yes-no proposition.
class Proposition {
 public:
  explicit Proposition(OperatorMatrix projector);
  const OperatorMatrix& projector() const { return p_; }
  Eigen::Index dim() const { return p_.rows(); }

 private:
  OperatorMatrix p_;
};

// Projector onto (e_i + e_j)/sqrt(2).
Proposition superposition_projector(Eigen::Index dim, Eigen::Index i,
                                    Eigen::Index j);

// Tr(P rho) / Tr(rho), in [0, 1].
double proposition_probability(const Proposition& p, const DensityState& rho);

// Standard deviation sqrt(p - p^2) of a projector-valued observable.
double proposition_deviation(const Proposition& p, const DensityState& rho);

// (1/2) |Tr([P, P1] rho) / Tr rho|, the right hand side of the uncertainty
// inequality dP * dP1 >= bound.
double uncertainty_bound(const Proposition& p, const Proposition& p1,
                         const DensityState& rho);

// Normalized harmonic-oscillator eigenfunction psi_n(x), a Gaussian times a
// Hermite polynomial, via the numerically stable normalized recurrence.
inline constexpr int kMaxOscillatorLevel = 200;
double oscillator_eigenfunction(int n, double x);

// psi_0(x) .. psi_nmax(x) in one pass.
std::vector<double> oscillator_eigenfunctions(int nmax, double x);

struct OscillatorBasis {
  int level_offset = 0;
  std::vector<double> x_grid;

  // [-8, 8] with 401 points.
  static OscillatorBasis default_grid(int level_offset);
};

// p(x) = sum_{mn} rho_mn psi_{k+m}(x) psi_{k+n}(x) over the grid. Pointwise
// nonnegative for a positive state.
std::vector<double> position_density(const DensityState& rho,
                                     const OscillatorBasis& basis);

}  // namespace nvn
