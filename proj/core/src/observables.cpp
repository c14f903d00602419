#include "nvn/observables.hpp"

#include <cmath>
#include <stdexcept>

namespace nvn {

double von_neumann_entropy(const DensityState& rho) {
  const double tr = rho.trace();
  if (!(tr > 0.0))
    throw std::domain_error("von_neumann_entropy: zero trace");
  const RealVector spectrum = rho.spectrum();
  double s = 0.0;
  for (Eigen::Index i = 0; i < spectrum.size(); ++i) {
    const double p = spectrum(i) / tr;
    if (p > 0.0) s -= p * std::log(p);
  }
  return std::max(0.0, s);
}

OrganismReducedEigenvalues organism_reduced_eigenvalues(double t) {
  const double s7 = std::sqrt(7.0), s15 = std::sqrt(15.0);
  const double s105 = std::sqrt(105.0);
  const double d1 = (s15 - s7) / 20.0 * std::tanh(2.0 * t);
  const double d2 = std::sqrt(26.0 + 2.0 * s105) / (40.0 * std::cosh(2.0 * t));
  OrganismReducedEigenvalues out;
  out.p1_low = 0.5 - std::abs(d1);
  out.p1_high = 0.5 + std::abs(d1);
  out.p2_low = 0.5 - d2;
  out.p2_high = 0.5 + d2;
  return out;
}

double organism_life_span_fwhm() {
  const auto deviation = [](double t) {
    const auto p = organism_reduced_eigenvalues(t);
    const double s = -(p.p2_low * std::log(p.p2_low) +
                       p.p2_high * std::log(p.p2_high));
    return std::log(2.0) - s;
  };
  const double half = 0.5 * deviation(0.0);
  double lo = 0.0, hi = 8.0;
  for (int i = 0; i < 80; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (deviation(mid) > half)
      lo = mid;
    else
      hi = mid;
  }
  return lo + hi;  // symmetric in t, full width is twice the crossing
}

PptCheck ppt_is_positive(const DensityState& rho,
                         const CompositeLayout& layout) {
  if (layout.factor_dims.size() != 2)
    throw std::invalid_argument("ppt_is_positive: need a two-factor layout");
  const OperatorMatrix normalized = rho.matrix() / rho.trace();
  const OperatorMatrix pt = partial_transpose(normalized, layout, 1);
  const RealVector spectrum = hermitian_eigensystem(pt).values;
  PptCheck out;
  out.min_eigenvalue = spectrum.minCoeff();
  out.positive = out.min_eigenvalue >= -1e-10 * normalized.norm();
  return out;
}

ComplexVector purify(const DensityState& rho) {
  const double tr = rho.trace();
  const Eigensystem sys = hermitian_eigensystem(rho.matrix() / tr);
  const Eigen::Index d = rho.dim();
  ComplexVector psi = ComplexVector::Zero(d * d);
  for (Eigen::Index e = 0; e < d; ++e) {
    double p = sys.values(e);
    if (p < 0.0) {
      if (p < -rho.positivity_tol() * std::max(1.0, rho.norm()))
        throw std::domain_error("purify: negative eigenvalue beyond tolerance");
      p = 0.0;
    }
    psi.segment(e * d, d) += std::sqrt(p) * sys.vectors.col(e);
  }
  return psi;
}

Proposition::Proposition(OperatorMatrix projector) : p_(std::move(projector)) {
  if (p_.rows() != p_.cols())
    throw std::invalid_argument("Proposition: projector not square");
  const double scale = std::max(1.0, p_.norm());
  if (hermiticity_defect(p_) > 1e-12 * scale)
    throw std::invalid_argument("Proposition: projector not Hermitian");
  if ((p_ * p_ - p_).norm() > 1e-12 * std::max(1.0, scale * scale))
    throw std::invalid_argument("Proposition: projector not idempotent");
}

Proposition superposition_projector(Eigen::Index dim, Eigen::Index i,
                                    Eigen::Index j) {
  if (i < 0 || j < 0 || i >= dim || j >= dim || i == j)
    throw std::invalid_argument("superposition_projector: bad indices");
  ComplexVector v = ComplexVector::Zero(dim);
  v(i) = 1.0 / std::sqrt(2.0);
  v(j) = 1.0 / std::sqrt(2.0);
  return Proposition(v * v.adjoint());
}

double proposition_probability(const Proposition& p, const DensityState& rho) {
  if (p.dim() != rho.dim())
    throw std::invalid_argument("proposition_probability: dimension mismatch");
  const double val = (p.projector() * rho.matrix()).trace().real() / rho.trace();
  return std::min(1.0, std::max(0.0, val));
}

double proposition_deviation(const Proposition& p, const DensityState& rho) {
  const double prob = proposition_probability(p, rho);
  return std::sqrt(std::max(0.0, prob - prob * prob));
}

double uncertainty_bound(const Proposition& p, const Proposition& p1,
                         const DensityState& rho) {
  if (p.dim() != rho.dim() || p1.dim() != rho.dim())
    throw std::invalid_argument("uncertainty_bound: dimension mismatch");
  const Complex tr =
      (commutator(p.projector(), p1.projector()) * rho.matrix()).trace();
  return 0.5 * std::abs(tr) / rho.trace();
}

std::vector<double> oscillator_eigenfunctions(int nmax, double x) {
  if (nmax < 0 || nmax > kMaxOscillatorLevel)
    throw std::invalid_argument("oscillator levels limited to 0..200");
  std::vector<double> psi(static_cast<size_t>(nmax) + 1);
  psi[0] = std::pow(M_PI, -0.25) * std::exp(-x * x / 2.0);
  if (nmax >= 1) psi[1] = x * std::sqrt(2.0) * psi[0];
  for (int n = 1; n < nmax; ++n)
    psi[static_cast<size_t>(n) + 1] =
        x * std::sqrt(2.0 / (n + 1.0)) * psi[static_cast<size_t>(n)] -
        std::sqrt(n / (n + 1.0)) * psi[static_cast<size_t>(n) - 1];
  return psi;
}

double oscillator_eigenfunction(int n, double x) {
  return oscillator_eigenfunctions(n, x).back();
}

OscillatorBasis OscillatorBasis::default_grid(int level_offset) {
  OscillatorBasis basis;
  basis.level_offset = level_offset;
  basis.x_grid.reserve(401);
  for (int i = 0; i <= 400; ++i)
    basis.x_grid.push_back(-8.0 + 16.0 * i / 400.0);
  return basis;
}

std::vector<double> position_density(const DensityState& rho,
                                     const OscillatorBasis& basis) {
  const int d = static_cast<int>(rho.dim());
  const int top = basis.level_offset + d - 1;
  if (basis.level_offset < 0 || top > kMaxOscillatorLevel)
    throw std::invalid_argument("position_density: level range out of bounds");

  std::vector<double> out;
  out.reserve(basis.x_grid.size());
  for (const double x : basis.x_grid) {
    const std::vector<double> psi = oscillator_eigenfunctions(top, x);
    double p = 0.0;
    for (int r = 0; r < d; ++r) {
      const double pr = psi[static_cast<size_t>(basis.level_offset + r)];
      p += rho.matrix()(r, r).real() * pr * pr;
      for (int c = r + 1; c < d; ++c)
        p += 2.0 * rho.matrix()(r, c).real() * pr *
             psi[static_cast<size_t>(basis.level_offset + c)];
    }
    out.push_back(p);
  }
  return out;
}

}  // namespace nvn
