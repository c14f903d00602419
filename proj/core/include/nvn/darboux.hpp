#pragma once

#include <vector>

#include "nvn/density_state.hpp"
#include "nvn/feedback.hpp"

namespace nvn {

// Data of one dressing step. nu is the spectral parameter (Im nu != 0, the
// conjugate branch mu = conj(nu) is hard-wired), a is the seed-linearization
// scalar with f(seed) = a seed + Delta, and chi0 the initial auxiliary
// vector. The dressing is nontrivial when chi0 is an eigenvector of
// (seed - conj(nu) H) whose eigenvalue is shared between Delta sectors.
struct DarbouxParameters {
  Complex nu;
  double a = 0.0;
  ComplexVector chi0;
};

// f(rho) - a * rho.
OperatorMatrix delta_operator(const DensityState& rho,
                              const FeedbackPolynomial& f, double a);

// Caller-checkable predicates for the dressing preconditions.
bool commutes_with(const OperatorMatrix& a, const OperatorMatrix& b,
                   double tol = 1e-10);
bool is_identity_multiple(const OperatorMatrix& a, double tol = 1e-10);

// One dressing step applied to a seed that evolves by the a-rescaled linear
// flow: returns
//   e^{-iaHt} ( seed + (nubar - nu) F(t)^{-1}
//               e^{-i Delta t / nubar} [ |chi0><chi0|, H ] e^{i Delta t / nu}
//             ) e^{iaHt}
// with F(t) = <chi0| exp(i (nubar - nu) Delta t / |nu|^2) |chi0>. Preserves
// the seed spectrum and trace. Throws if the preconditions fail or the
// normalization F(t) degenerates.
DensityState darboux_dress(const DensityState& seed0, const OperatorMatrix& h,
                           const FeedbackPolynomial& f,
                           const DarbouxParameters& params, double t);

struct LaxSample {
  double t;
  double residual;        // equation residual of the dressed state
  double spectrum_drift;  // max eigenvalue deviation from the seed spectrum
};

struct LaxReport {
  Complex z_nu;            // Rayleigh quotient of chi0 for (seed - nu H)
  Complex z_mu;            // same for (seed - conj(nu) H)
  double spectral_defect;  // how far chi0 is from an exact eigenvector
  double delta_commutator_norm;    // ||[Delta, H]||_F
  bool delta_identity_multiple;
  std::vector<LaxSample> samples;

  bool all_below(double residual_tol) const;
};

// Dresses the seed and verifies, at each sample time, that the dressed state
// satisfies the nonlinear equation (residual oracle) and stays isospectral
// to the seed. Failures are reported, not thrown.
LaxReport lax_covariance_check(const DensityState& seed0,
                               const OperatorMatrix& h,
                               const FeedbackPolynomial& f,
                               const DarbouxParameters& params,
                               const std::vector<double>& sample_times);

}  // namespace nvn
