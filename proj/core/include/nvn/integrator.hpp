#pragma once

#include <array>
#include <functional>
#include <stdexcept>
#include <vector>

#include "nvn/density_state.hpp"
#include "nvn/feedback.hpp"

namespace nvn {

class PositivityError : public std::runtime_error {
 public:
  PositivityError(double t, double min_eigenvalue, double bound);
  double time() const { return t_; }
  double min_eigenvalue() const { return min_eigenvalue_; }

 private:
  double t_;
  double min_eigenvalue_;
};

struct DriftSample {
  double t;
  double energy;                   // Tr H f(rho)
  std::array<double, 4> moments;   // Tr rho^n, n = 1..4
};

// Ordered (t, state) samples plus a conserved-quantity log.
struct Trajectory {
  std::vector<double> times;
  std::vector<DensityState> states;
  std::vector<DriftSample> drift_log;

  // Worst relative drift over the log, against the first sample.
  double max_energy_drift() const;
  double max_moment_drift() const;
  // Worst eigenvalue deviation of any logged state from the first one,
  // relative to the largest initial eigenvalue magnitude.
  double max_spectrum_drift() const;
};

struct IntegrateOptions {
  int sample_stride = 10;          // store every n-th step
  double positivity_guard = 1e-6;  // reject min eig < -guard * ||rho||_F
};

// Classical fixed-step fourth-order Runge-Kutta on the matrix equation
// d(rho)/dt = -i [H, f(rho)]. The state is re-Hermitized as (M + M^dag)/2
// after every step; eigenvalues are never clipped, a positivity violation
// beyond the guard raises PositivityError with the offending time.
Trajectory integrate(const DensityState& rho0, const OperatorMatrix& h,
                     const FeedbackPolynomial& f, double t0, double t1,
                     double dt, const IntegrateOptions& opts = {});

// ||rho_dot_fd - rhs(rho(t))||_F / max(1, ||rho(t)||_F) with a five-point
// central finite difference. The universal is-this-a-solution oracle.
double residual(const std::function<OperatorMatrix(double)>& state_at,
                const OperatorMatrix& h, const FeedbackPolynomial& f, double t,
                double fd_step = 1e-4);

}  // namespace nvn
