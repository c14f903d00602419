#include "nvn/darboux.hpp"

#include <cmath>
#include <stdexcept>

#include "nvn/integrator.hpp"

namespace nvn {

OperatorMatrix delta_operator(const DensityState& rho,
                              const FeedbackPolynomial& f, double a) {
  return f(rho.matrix()) - a * rho.matrix();
}

bool commutes_with(const OperatorMatrix& a, const OperatorMatrix& b,
                   double tol) {
  const double scale = std::max(1.0, a.norm() * b.norm());
  return commutator(a, b).norm() <= tol * scale;
}

bool is_identity_multiple(const OperatorMatrix& a, double tol) {
  const Eigen::Index d = a.rows();
  const Complex mean = a.trace() / static_cast<double>(d);
  const OperatorMatrix rest =
      a - mean * OperatorMatrix::Identity(d, d);
  return rest.norm() <= tol * std::max(1.0, a.norm());
}

namespace {

struct DressingContext {
  Eigensystem delta;       // eigenbasis of Delta
  Eigensystem hamiltonian; // eigenbasis of H, for the outer conjugation
  ComplexVector w;         // chi0 in the Delta basis, tiny sectors zeroed
  OperatorMatrix k_tilde;  // [w w^dag, H] in the Delta basis
  std::vector<bool> active;
  double norm_w2 = 0.0;
};

DressingContext make_context(const DensityState& seed0, const OperatorMatrix& h,
                             const FeedbackPolynomial& f,
                             const DarbouxParameters& params,
                             bool check_preconditions) {
  if (std::abs(params.nu.imag()) < 1e-15)
    throw std::invalid_argument("darboux_dress: Im(nu) must be nonzero");
  if (params.chi0.size() != seed0.dim())
    throw std::invalid_argument("darboux_dress: chi0 dimension mismatch");
  if (params.chi0.norm() == 0.0)
    throw std::invalid_argument("darboux_dress: chi0 is zero");

  const OperatorMatrix delta = delta_operator(seed0, f, params.a);
  if (check_preconditions) {
    if (!commutes_with(delta, h, 1e-8))
      throw std::invalid_argument("darboux_dress: Delta does not commute with H");
    if (!commutes_with(delta, seed0.matrix(), 1e-8))
      throw std::invalid_argument(
          "darboux_dress: Delta does not commute with the seed");
    if (is_identity_multiple(delta, 1e-10))
      throw std::invalid_argument(
          "darboux_dress: Delta is a multiple of the identity");
    // The seed itself must follow the a-rescaled linear flow.
    const auto seed_flow = [&](double s) {
      return unitary_conjugate_exp(h, params.a * s, seed0.matrix());
    };
    if (residual(seed_flow, h, f, 0.0) > 1e-6)
      throw std::invalid_argument(
          "darboux_dress: seed does not solve the equation");
  }

  DressingContext ctx;
  ctx.delta = hermitian_eigensystem(delta);
  ctx.hamiltonian = hermitian_eigensystem(h);
  ctx.w = ctx.delta.vectors.adjoint() * params.chi0;
  ctx.norm_w2 = ctx.w.squaredNorm();

  // Sectors carrying no weight of chi0 cannot contribute: H preserves the
  // Delta eigenspaces. Zero them so growing exponentials never touch them.
  ctx.active.resize(static_cast<size_t>(ctx.w.size()));
  for (Eigen::Index b = 0; b < ctx.w.size(); ++b) {
    ctx.active[static_cast<size_t>(b)] =
        std::norm(ctx.w(b)) > 1e-28 * ctx.norm_w2;
    if (!ctx.active[static_cast<size_t>(b)]) ctx.w(b) = Complex(0, 0);
  }

  const OperatorMatrix h_tilde =
      ctx.delta.vectors.adjoint() * h * ctx.delta.vectors;
  const OperatorMatrix ww = ctx.w * ctx.w.adjoint();
  ctx.k_tilde = ww * h_tilde - h_tilde * ww;
  return ctx;
}

OperatorMatrix dress_at(const DressingContext& ctx,
                        const DensityState& seed0,
                        const DarbouxParameters& params, double t) {
  const Complex nu = params.nu;
  const double nu2 = std::norm(nu);
  const double growth = nu.imag() / nu2;      // real rate multiplier
  const double phase_rate = nu.real() / nu2;  // imaginary part multiplier

  const Eigen::Index d = seed0.dim();
  // Largest contributing exponent, subtracted everywhere for stability.
  double m = -INFINITY;
  for (Eigen::Index b = 0; b < d; ++b)
    if (ctx.active[static_cast<size_t>(b)])
      m = std::max(m, growth * ctx.delta.values(b) * t);

  double f_norm = 0.0;  // F(t) * e^{-2m}
  for (Eigen::Index b = 0; b < d; ++b)
    if (ctx.active[static_cast<size_t>(b)])
      f_norm += std::norm(ctx.w(b)) *
                std::exp(2.0 * (growth * ctx.delta.values(b) * t - m));
  if (!(f_norm > 1e-250))
    throw std::runtime_error("darboux_dress: degenerate normalization F(t)");

  OperatorMatrix corr = OperatorMatrix::Zero(d, d);
  const Complex prefactor = (std::conj(nu) - nu) / f_norm;
  for (Eigen::Index b = 0; b < d; ++b) {
    if (!ctx.active[static_cast<size_t>(b)]) continue;
    for (Eigen::Index bp = 0; bp < d; ++bp) {
      if (!ctx.active[static_cast<size_t>(bp)]) continue;
      const Complex k = ctx.k_tilde(b, bp);
      if (k == Complex(0, 0)) continue;
      const double amp = std::exp((growth * ctx.delta.values(b) * t - m) +
                                  (growth * ctx.delta.values(bp) * t - m));
      const double phase =
          phase_rate * (ctx.delta.values(bp) - ctx.delta.values(b)) * t;
      corr(b, bp) = prefactor * k * amp * std::polar(1.0, phase);
    }
  }

  const OperatorMatrix inner =
      seed0.matrix() +
      ctx.delta.vectors * corr * ctx.delta.vectors.adjoint();

  // Outer conjugation e^{-iaHt} . e^{iaHt} in the H eigenbasis.
  ComplexVector phases(d);
  for (Eigen::Index i = 0; i < d; ++i)
    phases(i) = std::polar(1.0, -params.a * ctx.hamiltonian.values(i) * t);
  const OperatorMatrix u =
      ctx.hamiltonian.vectors * phases.asDiagonal() *
      ctx.hamiltonian.vectors.adjoint();
  return u * inner * u.adjoint();
}

}  // namespace

DensityState darboux_dress(const DensityState& seed0, const OperatorMatrix& h,
                           const FeedbackPolynomial& f,
                           const DarbouxParameters& params, double t) {
  const DressingContext ctx = make_context(seed0, h, f, params, true);
  return DensityState(dress_at(ctx, seed0, params, t), seed0.hermiticity_tol(),
                      seed0.positivity_tol());
}

bool LaxReport::all_below(double residual_tol) const {
  for (const auto& s : samples)
    if (!(s.residual < residual_tol)) return false;
  return true;
}

LaxReport lax_covariance_check(const DensityState& seed0,
                               const OperatorMatrix& h,
                               const FeedbackPolynomial& f,
                               const DarbouxParameters& params,
                               const std::vector<double>& sample_times) {
  const DressingContext ctx = make_context(seed0, h, f, params, true);

  LaxReport report;
  const ComplexVector& chi = params.chi0;
  const double n2 = chi.squaredNorm();
  report.z_nu =
      (chi.adjoint() * (seed0.matrix() - params.nu * h) * chi)(0, 0) / n2;
  report.z_mu =
      (chi.adjoint() * (seed0.matrix() - std::conj(params.nu) * h) * chi)(0, 0) /
      n2;
  const ComplexVector defect =
      (seed0.matrix() - std::conj(params.nu) * h) * chi - report.z_mu * chi;
  report.spectral_defect = defect.norm() / chi.norm();

  const OperatorMatrix delta = delta_operator(seed0, f, params.a);
  report.delta_commutator_norm = commutator(delta, h).norm();
  report.delta_identity_multiple = is_identity_multiple(delta);

  const RealVector seed_spectrum = seed0.spectrum();
  const double spectrum_scale =
      std::max(1e-300, seed_spectrum.cwiseAbs().maxCoeff());
  const auto dressed = [&](double s) { return dress_at(ctx, seed0, params, s); };

  for (double t : sample_times) {
    LaxSample sample;
    sample.t = t;
    sample.residual = residual(dressed, h, f, t);
    const RealVector sp = hermitian_eigensystem(dressed(t)).values;
    sample.spectrum_drift =
        (sp - seed_spectrum).cwiseAbs().maxCoeff() / spectrum_scale;
    report.samples.push_back(sample);
  }
  return report;
}

}  // namespace nvn
