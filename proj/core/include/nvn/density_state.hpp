#pragma once

#include <vector>

#include "nvn/operator_matrix.hpp"

namespace nvn {

inline constexpr double kDefaultHermiticityTol = 1e-10;
inline constexpr double kDefaultPositivityTol = 1e-10;

// Hermitian positive-semidefinite matrix with tolerance-checked invariants.
// The trace must be real and positive but is not required to equal one.
class DensityState {
 public:
  explicit DensityState(OperatorMatrix m,
                        double hermiticity_tol = kDefaultHermiticityTol,
                        double positivity_tol = kDefaultPositivityTol);

  const OperatorMatrix& matrix() const { return m_; }
  Eigen::Index dim() const { return m_.rows(); }
  double trace() const { return trace_; }
  double norm() const { return norm_; }
  double hermiticity_tol() const { return hermiticity_tol_; }
  double positivity_tol() const { return positivity_tol_; }

  // Ascending eigenvalues.
  RealVector spectrum() const;

 private:
  OperatorMatrix m_;
  double hermiticity_tol_;
  double positivity_tol_;
  double trace_;
  double norm_;
};

// Tensor factorization of a dimension: ordered factor dimensions whose
// product equals the matrix dimension they are applied to.
struct CompositeLayout {
  std::vector<Eigen::Index> factor_dims;

  Eigen::Index dim() const;
  void check_consistent(Eigen::Index matrix_dim) const;
};

// Trace out every factor except `keep` (0-based).
DensityState partial_trace(const DensityState& rho,
                           const CompositeLayout& layout, int keep);

// Transpose the indices of factor `which` (0-based). Hermitian and
// trace-preserving, an involution, but not positivity-preserving.
OperatorMatrix partial_transpose(const OperatorMatrix& rho,
                                 const CompositeLayout& layout, int which);
OperatorMatrix partial_transpose(const DensityState& rho,
                                 const CompositeLayout& layout, int which);

DensityState unitary_conjugate_exp(const OperatorMatrix& h, double s,
                                   const DensityState& rho);

}  // namespace nvn
