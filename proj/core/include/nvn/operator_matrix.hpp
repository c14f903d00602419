#pragma once

#include <complex>
#include <functional>

#include <Eigen/Dense>

namespace nvn {

using Complex = std::complex<double>;

// Dense complex square matrix in row-major layout. Carrier for Hamiltonians,
// density matrices, projectors and every intermediate operator.
using OperatorMatrix =
    Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

bool all_finite(const OperatorMatrix& m);

// ||m - m^dagger||_F
double hermiticity_defect(const OperatorMatrix& m);

// AB - BA. Throws std::invalid_argument on dimension mismatch.
OperatorMatrix commutator(const OperatorMatrix& a, const OperatorMatrix& b);

// Kronecker product, dim = a.dim * b.dim.
OperatorMatrix tensor_product(const OperatorMatrix& a, const OperatorMatrix& b);

struct Eigensystem {
  RealVector values;       // ascending
  OperatorMatrix vectors;  // orthonormal columns, one per eigenvalue
};

// Spectral decomposition of a Hermitian matrix. Deterministic: eigenvalues
// ascending, each eigenvector's first significant component made real
// positive. Throws std::invalid_argument if the input is not Hermitian
// within hermiticity_tol * ||a||_F.
Eigensystem hermitian_eigensystem(const OperatorMatrix& a,
                                  double hermiticity_tol = 1e-10);

// g applied spectrally: V diag(g(lambda)) V^dagger. Throws std::domain_error
// if g is not finite at an eigenvalue.
OperatorMatrix matrix_function(const OperatorMatrix& a,
                               const std::function<double(double)>& g);

// e^{-isH} rho e^{isH} via the eigendecomposition of Hermitian h.
OperatorMatrix unitary_conjugate_exp(const OperatorMatrix& h, double s,
                                     const OperatorMatrix& rho);

}  // namespace nvn
