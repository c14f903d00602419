#include "nvn/integrator.hpp"

#include <cmath>
#include <string>

namespace nvn {

PositivityError::PositivityError(double t, double min_eigenvalue, double bound)
    : std::runtime_error("positivity violated at t = " + std::to_string(t) +
                         ": min eigenvalue " + std::to_string(min_eigenvalue) +
                         " < -" + std::to_string(bound)),
      t_(t),
      min_eigenvalue_(min_eigenvalue) {}

namespace {

double relative_drift(double value, double reference) {
  return std::abs(value - reference) / std::max(1e-300, std::abs(reference));
}

}  // namespace

double Trajectory::max_energy_drift() const {
  if (drift_log.empty()) return 0.0;
  double worst = 0.0;
  for (const auto& s : drift_log)
    worst = std::max(worst, relative_drift(s.energy, drift_log.front().energy));
  return worst;
}

double Trajectory::max_moment_drift() const {
  if (drift_log.empty()) return 0.0;
  double worst = 0.0;
  for (const auto& s : drift_log)
    for (size_t n = 0; n < s.moments.size(); ++n)
      worst = std::max(worst, relative_drift(s.moments[n],
                                             drift_log.front().moments[n]));
  return worst;
}

double Trajectory::max_spectrum_drift() const {
  if (states.empty()) return 0.0;
  const RealVector ref = states.front().spectrum();
  const double scale = std::max(1e-300, ref.cwiseAbs().maxCoeff());
  double worst = 0.0;
  for (const auto& st : states) {
    const RealVector sp = st.spectrum();
    worst = std::max(worst, (sp - ref).cwiseAbs().maxCoeff() / scale);
  }
  return worst;
}

Trajectory integrate(const DensityState& rho0, const OperatorMatrix& h,
                     const FeedbackPolynomial& f, double t0, double t1,
                     double dt, const IntegrateOptions& opts) {
  if (f.classification() == FeedbackClass::Invalid)
    throw std::invalid_argument("integrate: invalid feedback class");
  if (!(dt > 0.0)) throw std::invalid_argument("integrate: dt must be > 0");
  if (!(dt <= t1 - t0))
    throw std::invalid_argument("integrate: dt must not exceed t1 - t0");
  if (opts.sample_stride < 1)
    throw std::invalid_argument("integrate: sample_stride < 1");

  const long long n_steps = std::max(1ll, std::llround((t1 - t0) / dt));
  const double step = (t1 - t0) / static_cast<double>(n_steps);

  const auto deriv = [&](const OperatorMatrix& m) -> OperatorMatrix {
    return Complex(0.0, -1.0) * commutator(h, f(m));
  };

  Trajectory traj;
  OperatorMatrix m = rho0.matrix();

  const auto log_sample = [&](double t, const OperatorMatrix& mat) {
    DensityState st(mat, rho0.hermiticity_tol(), rho0.positivity_tol());
    DriftSample d;
    d.t = t;
    d.energy = conserved_energy(st, h, f);
    const auto mom = conserved_moments(st, 4);
    for (int n = 0; n < 4; ++n) d.moments[static_cast<size_t>(n)] = mom[static_cast<size_t>(n)];
    traj.times.push_back(t);
    traj.states.push_back(std::move(st));
    traj.drift_log.push_back(d);
  };

  log_sample(t0, m);
  for (long long i = 0; i < n_steps; ++i) {
    const double t = t0 + static_cast<double>(i + 1) * step;
    const OperatorMatrix k1 = deriv(m);
    const OperatorMatrix k2 = deriv(m + (step / 2.0) * k1);
    const OperatorMatrix k3 = deriv(m + (step / 2.0) * k2);
    const OperatorMatrix k4 = deriv(m + step * k3);
    m = m + (step / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    m = 0.5 * (m + m.adjoint()).eval();

    if (!all_finite(m))
      throw PositivityError(t, -INFINITY, opts.positivity_guard);
    const double bound = opts.positivity_guard * m.norm();
    Eigen::SelfAdjointEigenSolver<OperatorMatrix> solver(m);
    const double min_eig = solver.eigenvalues().minCoeff();
    if (min_eig < -bound) throw PositivityError(t, min_eig, bound);

    if ((i + 1) % opts.sample_stride == 0 || i + 1 == n_steps)
      log_sample(t, m);
  }
  return traj;
}

double residual(const std::function<OperatorMatrix(double)>& state_at,
                const OperatorMatrix& h, const FeedbackPolynomial& f, double t,
                double fd_step) {
  if (!(fd_step > 0.0)) throw std::invalid_argument("residual: fd_step <= 0");
  const double e = fd_step;
  const OperatorMatrix deriv_fd =
      (state_at(t - 2 * e) - 8.0 * state_at(t - e) + 8.0 * state_at(t + e) -
       state_at(t + 2 * e)) /
      (12.0 * e);
  const OperatorMatrix at_t = state_at(t);
  const OperatorMatrix model =
      Complex(0.0, -1.0) * commutator(h, f(at_t));
  return (deriv_fd - model).norm() / std::max(1.0, at_t.norm());
}

}  // namespace nvn
