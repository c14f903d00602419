#include "nvn/operator_matrix.hpp"

#include <cmath>
#include <stdexcept>

namespace nvn {

bool all_finite(const OperatorMatrix& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag()))
        return false;
  return true;
}

double hermiticity_defect(const OperatorMatrix& m) {
  return (m - m.adjoint()).norm();
}

OperatorMatrix commutator(const OperatorMatrix& a, const OperatorMatrix& b) {
  if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows())
    throw std::invalid_argument("commutator: dimension mismatch");
  return a * b - b * a;
}

OperatorMatrix tensor_product(const OperatorMatrix& a, const OperatorMatrix& b) {
  const Eigen::Index ar = a.rows(), ac = a.cols(), br = b.rows(), bc = b.cols();
  OperatorMatrix out(ar * br, ac * bc);
  for (Eigen::Index i = 0; i < ar; ++i)
    for (Eigen::Index j = 0; j < ac; ++j)
      out.block(i * br, j * bc, br, bc) = a(i, j) * b;
  return out;
}

Eigensystem hermitian_eigensystem(const OperatorMatrix& a,
                                  double hermiticity_tol) {
  if (a.rows() != a.cols())
    throw std::invalid_argument("hermitian_eigensystem: matrix not square");
  const double scale = a.norm();
  if (hermiticity_defect(a) > hermiticity_tol * std::max(1.0, scale))
    throw std::invalid_argument(
        "hermitian_eigensystem: input not Hermitian within tolerance");

  Eigen::SelfAdjointEigenSolver<OperatorMatrix> solver(0.5 * (a + a.adjoint()));
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("hermitian_eigensystem: eigensolver failed");

  Eigensystem sys{solver.eigenvalues(), solver.eigenvectors()};

  // Fix the phase of each column: first component above threshold becomes
  // real positive. Keeps results reproducible across runs.
  for (Eigen::Index c = 0; c < sys.vectors.cols(); ++c) {
    const double colmax = sys.vectors.col(c).cwiseAbs().maxCoeff();
    for (Eigen::Index r = 0; r < sys.vectors.rows(); ++r) {
      const Complex v = sys.vectors(r, c);
      if (std::abs(v) > 1e-8 * colmax) {
        sys.vectors.col(c) *= std::conj(v) / std::abs(v);
        break;
      }
    }
  }
  return sys;
}

OperatorMatrix matrix_function(const OperatorMatrix& a,
                               const std::function<double(double)>& g) {
  const Eigensystem sys = hermitian_eigensystem(a);
  RealVector mapped(sys.values.size());
  for (Eigen::Index i = 0; i < sys.values.size(); ++i) {
    mapped(i) = g(sys.values(i));
    if (!std::isfinite(mapped(i)))
      throw std::domain_error("matrix_function: g undefined at eigenvalue " +
                              std::to_string(sys.values(i)));
  }
  return sys.vectors * mapped.asDiagonal() * sys.vectors.adjoint();
}

OperatorMatrix unitary_conjugate_exp(const OperatorMatrix& h, double s,
                                     const OperatorMatrix& rho) {
  if (h.rows() != rho.rows() || h.cols() != rho.cols())
    throw std::invalid_argument("unitary_conjugate_exp: dimension mismatch");
  const Eigensystem sys = hermitian_eigensystem(h);
  ComplexVector phases(sys.values.size());
  for (Eigen::Index i = 0; i < sys.values.size(); ++i)
    phases(i) = std::exp(Complex(0.0, -s * sys.values(i)));
  const OperatorMatrix u = sys.vectors * phases.asDiagonal() * sys.vectors.adjoint();
  return u * rho * u.adjoint();
}

}  // namespace nvn
