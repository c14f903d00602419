#include "nvn/feedback.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace nvn {

namespace {
constexpr double kClassEps = 1e-12;
}

FeedbackPolynomial::FeedbackPolynomial(std::vector<double> coefficients)
    : c_(std::move(coefficients)) {
  if (c_.empty()) c_.push_back(0.0);
  for (double v : c_)
    if (!std::isfinite(v))
      throw std::invalid_argument("FeedbackPolynomial: non-finite coefficient");

  const double f0 = c_.front();
  scale_ = std::accumulate(c_.begin(), c_.end(), 0.0);  // f(1)
  if (std::abs(f0) <= kClassEps && std::abs(scale_ - 1.0) <= kClassEps)
    cls_ = FeedbackClass::Strict;
  else if (std::abs(f0) <= kClassEps && std::abs(scale_) > kClassEps)
    cls_ = FeedbackClass::Proportional;
  else
    cls_ = FeedbackClass::Invalid;
}

double FeedbackPolynomial::operator()(double x) const {
  double acc = 0.0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

OperatorMatrix FeedbackPolynomial::operator()(const OperatorMatrix& rho) const {
  const Eigen::Index d = rho.rows();
  const OperatorMatrix id = OperatorMatrix::Identity(d, d);
  OperatorMatrix acc = OperatorMatrix::Zero(d, d);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it)
    acc = acc * rho + *it * id;
  return acc;
}

bool FeedbackPolynomial::affine() const { return degree() <= 1; }

int FeedbackPolynomial::degree() const {
  for (int i = static_cast<int>(c_.size()) - 1; i >= 0; --i)
    if (c_[static_cast<size_t>(i)] != 0.0) return i;
  return 0;
}

FeedbackPolynomial FeedbackPolynomial::identity() {
  return FeedbackPolynomial({0.0, 1.0});
}

FeedbackPolynomial FeedbackPolynomial::square() {
  return FeedbackPolynomial({0.0, 0.0, 1.0});
}

FeedbackPolynomial FeedbackPolynomial::quadratic_mix(double h) {
  return FeedbackPolynomial({0.0, 1.0 - h, h});
}

FeedbackClassification classify_feedback(const FeedbackPolynomial& f) {
  return {f.classification(), f.scale()};
}

OperatorMatrix rhs(const DensityState& rho, const OperatorMatrix& h,
                   const FeedbackPolynomial& f) {
  if (f.classification() == FeedbackClass::Invalid)
    throw std::invalid_argument("rhs: invalid feedback class");
  if (h.rows() != rho.dim() || h.cols() != rho.dim())
    throw std::invalid_argument("rhs: dimension mismatch");
  return Complex(0.0, -1.0) * commutator(h, f(rho.matrix()));
}

double conserved_energy(const DensityState& rho, const OperatorMatrix& h,
                        const FeedbackPolynomial& f) {
  if (h.rows() != rho.dim() || h.cols() != rho.dim())
    throw std::invalid_argument("conserved_energy: dimension mismatch");
  return (h * f(rho.matrix())).trace().real();
}

std::vector<double> conserved_moments(const DensityState& rho, int n_max) {
  if (n_max < 1) throw std::invalid_argument("conserved_moments: n_max < 1");
  std::vector<double> out;
  out.reserve(static_cast<size_t>(n_max));
  OperatorMatrix p = rho.matrix();
  for (int n = 1; n <= n_max; ++n) {
    out.push_back(p.trace().real());
    if (n < n_max) p = p * rho.matrix();
  }
  return out;
}

}  // namespace nvn
