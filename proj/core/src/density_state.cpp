#include "nvn/density_state.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace nvn {

DensityState::DensityState(OperatorMatrix m, double hermiticity_tol,
                           double positivity_tol)
    : m_(std::move(m)),
      hermiticity_tol_(hermiticity_tol),
      positivity_tol_(positivity_tol) {
  if (m_.rows() != m_.cols())
    throw std::invalid_argument("DensityState: matrix not square");
  if (m_.rows() == 0)
    throw std::invalid_argument("DensityState: empty matrix");
  if (!all_finite(m_))
    throw std::invalid_argument("DensityState: non-finite entry");

  norm_ = m_.norm();
  const double scale = std::max(1.0, norm_);
  if (hermiticity_defect(m_) > hermiticity_tol_ * scale)
    throw std::invalid_argument("DensityState: not Hermitian within tolerance");

  const Complex tr = m_.trace();
  if (std::abs(tr.imag()) > hermiticity_tol_ * scale)
    throw std::invalid_argument("DensityState: trace not real");
  trace_ = tr.real();
  if (trace_ <= 0.0)
    throw std::invalid_argument("DensityState: trace not positive");

  Eigen::SelfAdjointEigenSolver<OperatorMatrix> solver(0.5 * (m_ + m_.adjoint()));
  if (solver.eigenvalues().minCoeff() < -positivity_tol_ * scale)
    throw std::invalid_argument(
        "DensityState: negative eigenvalue " +
        std::to_string(solver.eigenvalues().minCoeff()) + " beyond tolerance");
}

RealVector DensityState::spectrum() const {
  return hermitian_eigensystem(m_, hermiticity_tol_).values;
}

Eigen::Index CompositeLayout::dim() const {
  Eigen::Index d = 1;
  for (Eigen::Index f : factor_dims) d *= f;
  return d;
}

void CompositeLayout::check_consistent(Eigen::Index matrix_dim) const {
  if (factor_dims.empty())
    throw std::invalid_argument("CompositeLayout: no factors");
  for (Eigen::Index f : factor_dims)
    if (f <= 0) throw std::invalid_argument("CompositeLayout: factor dim <= 0");
  if (dim() != matrix_dim)
    throw std::invalid_argument("CompositeLayout: factor product != dim");
}

namespace {

// Row-major strides of the factor indices.
std::vector<Eigen::Index> strides_of(const CompositeLayout& layout) {
  const auto& d = layout.factor_dims;
  std::vector<Eigen::Index> s(d.size(), 1);
  for (int i = static_cast<int>(d.size()) - 2; i >= 0; --i)
    s[i] = s[i + 1] * d[i + 1];
  return s;
}

}  // namespace

DensityState partial_trace(const DensityState& rho,
                           const CompositeLayout& layout, int keep) {
  layout.check_consistent(rho.dim());
  const int nf = static_cast<int>(layout.factor_dims.size());
  if (keep < 0 || keep >= nf)
    throw std::invalid_argument("partial_trace: keep index out of range");

  const auto stride = strides_of(layout);
  const Eigen::Index dk = layout.factor_dims[keep];
  const Eigen::Index rest = rho.dim() / dk;

  // Offsets of all joint values of the traced factors.
  std::vector<Eigen::Index> offsets;
  offsets.reserve(rest);
  offsets.push_back(0);
  for (int f = 0; f < nf; ++f) {
    if (f == keep) continue;
    const size_t prev = offsets.size();
    for (Eigen::Index v = 1; v < layout.factor_dims[f]; ++v)
      for (size_t r = 0; r < prev; ++r)
        offsets.push_back(offsets[r] + v * stride[f]);
  }

  OperatorMatrix out = OperatorMatrix::Zero(dk, dk);
  for (Eigen::Index i = 0; i < dk; ++i)
    for (Eigen::Index j = 0; j < dk; ++j) {
      Complex acc(0.0, 0.0);
      for (const Eigen::Index off : offsets)
        acc += rho.matrix()(off + i * stride[keep], off + j * stride[keep]);
      out(i, j) = acc;
    }
  return DensityState(std::move(out), rho.hermiticity_tol(),
                      rho.positivity_tol());
}

OperatorMatrix partial_transpose(const OperatorMatrix& rho,
                                 const CompositeLayout& layout, int which) {
  layout.check_consistent(rho.rows());
  const int nf = static_cast<int>(layout.factor_dims.size());
  if (which < 0 || which >= nf)
    throw std::invalid_argument("partial_transpose: factor index out of range");

  const auto stride = strides_of(layout);
  const Eigen::Index dw = layout.factor_dims[which];
  const Eigen::Index sw = stride[which];
  const Eigen::Index d = rho.rows();

  OperatorMatrix out(d, d);
  for (Eigen::Index r = 0; r < d; ++r) {
    const Eigen::Index rv = (r / sw) % dw;
    const Eigen::Index rbase = r - rv * sw;
    for (Eigen::Index c = 0; c < d; ++c) {
      const Eigen::Index cv = (c / sw) % dw;
      const Eigen::Index cbase = c - cv * sw;
      out(rbase + cv * sw, cbase + rv * sw) = rho(r, c);
    }
  }
  return out;
}

OperatorMatrix partial_transpose(const DensityState& rho,
                                 const CompositeLayout& layout, int which) {
  return partial_transpose(rho.matrix(), layout, which);
}

DensityState unitary_conjugate_exp(const OperatorMatrix& h, double s,
                                   const DensityState& rho) {
  return DensityState(unitary_conjugate_exp(h, s, rho.matrix()),
                      rho.hermiticity_tol(), rho.positivity_tol());
}

}  // namespace nvn
