#pragma once

#include <vector>

#include "nvn/density_state.hpp"
#include "nvn/operator_matrix.hpp"

namespace nvn {

// Consistency classes of a feedback polynomial. Strict: f(0)=0, f(1)=1, so
// pure states evolve exactly linearly. Proportional: f(0)=0, f(1)=c!=0, the
// linear limit holds after rescaling time by c. Anything else is invalid as
// a feedback.
enum class FeedbackClass { Strict, Proportional, Invalid };

struct FeedbackClassification {
  FeedbackClass cls;
  double scale;  // f(1); the time reparametrization factor when Proportional
};

// Real polynomial f(x) = c0 + c1 x + ... + cn x^n applied spectrally to a
// state. The class is computed at construction.
class FeedbackPolynomial {
 public:
  explicit FeedbackPolynomial(std::vector<double> coefficients);

  double operator()(double x) const;
  OperatorMatrix operator()(const OperatorMatrix& rho) const;

  const std::vector<double>& coefficients() const { return c_; }
  FeedbackClass classification() const { return cls_; }
  double scale() const { return scale_; }
  bool affine() const;
  int degree() const;

  static FeedbackPolynomial identity();               // f(x) = x
  static FeedbackPolynomial square();                 // f(x) = x^2
  static FeedbackPolynomial quadratic_mix(double h);  // (1-h) x + h x^2

 private:
  std::vector<double> c_;
  FeedbackClass cls_;
  double scale_;
};

FeedbackClassification classify_feedback(const FeedbackPolynomial& f);

// Time derivative of the state: -i [H, f(rho)]. Hermitian for Hermitian
// inputs. Throws on invalid feedback class or dimension mismatch.
OperatorMatrix rhs(const DensityState& rho, const OperatorMatrix& h,
                   const FeedbackPolynomial& f);

// Tr(H f(rho)); conserved along solutions.
double conserved_energy(const DensityState& rho, const OperatorMatrix& h,
                        const FeedbackPolynomial& f);

// (Tr rho, Tr rho^2, ..., Tr rho^n_max); conserved along solutions.
std::vector<double> conserved_moments(const DensityState& rho, int n_max);

}  // namespace nvn
