#include "nvn/exact_solutions.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace nvn {

namespace {

const double kSqrt5 = std::sqrt(5.0);
const double kSqrt7 = std::sqrt(7.0);
const double kSqrt15 = std::sqrt(15.0);
const double kSqrt105 = std::sqrt(105.0);
const Complex kI(0.0, 1.0);

}  // namespace

// ---------------------------------------------------------------------------
// mutation3
// ---------------------------------------------------------------------------

double MutationParams::omega0() const {
  return 1.0 - (5.0 + kSqrt5) / (15.0 + kSqrt5) * feedback_strength;
}

double MutationParams::gamma() const {
  return 2.0 * feedback_strength / (15.0 + kSqrt5);
}

double MutationParams::critical_strength() {
  return (15.0 + kSqrt5) / (5.0 + kSqrt5);
}

OperatorMatrix mutation3_hamiltonian(int level) {
  if (level < 0) throw std::invalid_argument("mutation3: level must be >= 0");
  OperatorMatrix h = OperatorMatrix::Zero(3, 3);
  for (int n = 0; n < 3; ++n) h(n, n) = static_cast<double>(level + n);
  return h;
}

DensityState mutation3(const MutationParams& params, double t) {
  const double alpha = params.alpha;
  const double q = params.gamma() * t;
  const double w0t = params.omega0() * t;

  // off-diagonal amplitudes, evaluated in overflow-safe form
  Complex xi(0.0, 0.0);
  Complex zeta(0.0, 0.0);
  const Complex cxi =
      (2.0 + (3.0 - kSqrt5) * kI) * std::sqrt(3.0 + kSqrt5) / std::sqrt(3.0);
  const Complex czeta = 1.0 + 4.0 * kSqrt5 * kI;
  if (alpha == 0.0) {
    zeta = -3.0 * std::polar(1.0, 2.0 * w0t);
  } else {
    const double a2 = alpha * alpha;
    const double u = std::exp(-std::abs(q));
    const double r1 = (q >= 0.0) ? u / (1.0 + a2 * u * u) : u / (u * u + a2);
    xi = cxi * alpha * r1 * std::polar(1.0, w0t);
    const double e2 = std::exp(-2.0 * std::abs(q));
    Complex ratio;
    if (q >= 0.0)
      ratio = (9.0 + czeta * a2 * e2) / (3.0 * (1.0 + a2 * e2));
    else
      ratio = (9.0 * e2 + czeta * a2) / (3.0 * (e2 + a2));
    zeta = -ratio * std::polar(1.0, 2.0 * w0t);
  }

  OperatorMatrix m(3, 3);
  m(0, 0) = 5.0;
  m(1, 1) = 5.0 + kSqrt5;
  m(2, 2) = 5.0;
  m(0, 1) = xi;
  m(1, 2) = xi;
  m(0, 2) = zeta;
  m(1, 0) = std::conj(xi);
  m(2, 1) = std::conj(xi);
  m(2, 0) = std::conj(zeta);
  m /= (15.0 + kSqrt5);
  return DensityState(std::move(m));
}

DensityState mutation3_via_multispecies(const MutationParams& params,
                                        double t) {
  const double big_t = (15.0 + kSqrt5) / 2.0;  // per-block seed trace
  const double denom = big_t - params.feedback_strength * (big_t - 1.0);
  if (std::abs(denom) < 1e-9 * big_t)
    throw std::domain_error(
        "mutation3_via_multispecies: construction parameters diverge at "
        "h = T/(T-1)");
  const double h_u = params.feedback_strength / denom;
  const double c = big_t / denom;  // time rescaling, possibly negative

  MultiSpeciesConfig cfg;
  cfg.a = 5.0;
  cfg.b = -4.0;
  cfg.m = 1;
  cfg.k = params.level;
  cfg.l = 0;
  cfg.h = h_u;
  // Relative phase putting the same amplitude on both off-diagonal entries.
  const double phi_alpha = 0.5 * std::atan2(2.0, -kSqrt5);
  cfg.alphas = {params.alpha * std::polar(1.0, phi_alpha)};
  cfg.betas = {Complex(1.0, 0.0)};

  const DensityState raw = multispecies_solution(cfg, t / c);
  return DensityState(raw.matrix() * (2.0 / (15.0 + kSqrt5)));
}

double mutation3_switch_fall_time(const MutationParams& params) {
  if (params.feedback_strength == 0.0)
    return std::numeric_limits<double>::infinity();

  const auto level01 = [&](double t) {
    const Complex v = mutation3(params, t).matrix()(0, 1);
    return std::norm(v);
  };
  const double t_peak =
      std::log(std::max(std::abs(params.alpha), 1e-300)) / params.gamma();
  const double peak = level01(t_peak);

  // |rho_01|^2 decreases monotonically for t > t_peak.
  const auto crossing = [&](double target) {
    double lo = t_peak;
    double hi = t_peak + 1.0 / std::abs(params.gamma());
    while (level01(hi) > target) hi += 1.0 / std::abs(params.gamma());
    for (int i = 0; i < 200; ++i) {
      const double mid = 0.5 * (lo + hi);
      if (level01(mid) > target)
        lo = mid;
      else
        hi = mid;
    }
    return 0.5 * (lo + hi);
  };
  return crossing(0.1 * peak) - crossing(0.9 * peak);
}

// ---------------------------------------------------------------------------
// organism
// ---------------------------------------------------------------------------

namespace {

// The block-diagonal presentation groups the basis by the second qubit; the
// public factor order is (particle 1) (x) (particle 2). kPerm maps block
// indices to tensor indices.
constexpr int kPerm[4] = {0, 2, 1, 3};

OperatorMatrix permute_to_tensor(const OperatorMatrix& block_basis) {
  OperatorMatrix out(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      out(kPerm[i], kPerm[j]) = block_basis(i, j);
  return out;
}

OperatorMatrix organism_interior_block_basis(double t) {
  const double th = std::tanh(2.0 * t);
  const double ch = std::cosh(2.0 * t);
  OperatorMatrix m = OperatorMatrix::Zero(4, 4);
  m(0, 0) = 5.0 - kSqrt7 * th;
  m(1, 1) = 5.0 + kSqrt7 * th;
  m(2, 2) = 5.0 + kSqrt15 * th;
  m(3, 3) = 5.0 - kSqrt15 * th;
  m(0, 2) = (-13.0 * kI - 3.0 * kSqrt7 - kSqrt15 - kI * kSqrt105) / (8.0 * ch);
  m(0, 3) = (-7.0 * kI + 3.0 * kSqrt7 - 3.0 * kSqrt15 + kI * kSqrt105) / (8.0 * ch);
  m(1, 2) = (15.0 * kI + kSqrt7 - kSqrt15 - kI * kSqrt105) / (8.0 * ch);
  m(1, 3) = (kSqrt7 + kSqrt15) / (2.0 * ch);
  m(2, 0) = std::conj(m(0, 2));
  m(3, 0) = std::conj(m(0, 3));
  m(2, 1) = std::conj(m(1, 2));
  m(3, 1) = std::conj(m(1, 3));
  return 0.5 * m;
}

}  // namespace

OperatorMatrix organism_hamiltonian() {
  OperatorMatrix sx(2, 2), sz(2, 2), id(2, 2);
  sx << 0, 1, 1, 0;
  sz << 1, 0, 0, -1;
  id << 1, 0, 0, 1;
  return tensor_product(2.0 * sx, id) + tensor_product(id, sz);
}

DensityState organism_seed() {
  OperatorMatrix m = OperatorMatrix::Zero(4, 4);
  m(0, 0) = 0.5 * (5.0 + kSqrt7);
  m(1, 1) = 0.5 * (5.0 + kSqrt15);
  m(2, 2) = 0.5 * (5.0 - kSqrt7);
  m(3, 3) = 0.5 * (5.0 - kSqrt15);
  return DensityState(std::move(m));
}

DensityState organism_interior(double t) {
  return DensityState(permute_to_tensor(organism_interior_block_basis(t)));
}

DensityState organism_solution(double t) {
  return unitary_conjugate_exp(organism_hamiltonian(), 5.0 * t,
                               organism_interior(t));
}

DensityState organism_interior_limit(int direction) {
  if (direction != 1 && direction != -1)
    throw std::invalid_argument("organism_interior_limit: direction is +-1");
  const double s = static_cast<double>(direction);
  OperatorMatrix m = OperatorMatrix::Zero(4, 4);
  m(0, 0) = 0.5 * (5.0 - s * kSqrt7);
  m(1, 1) = 0.5 * (5.0 + s * kSqrt7);
  m(2, 2) = 0.5 * (5.0 + s * kSqrt15);
  m(3, 3) = 0.5 * (5.0 - s * kSqrt15);
  return DensityState(permute_to_tensor(m));
}

CompositeLayout organism_layout() { return CompositeLayout{{2, 2}}; }

DarbouxParameters organism_darboux_parameters() {
  // Shared eigenvalue (5+i)/2 of (seed - i H) across both energy blocks;
  // the relative phase aligns the dressed off-diagonal block.
  const Complex phase = ((kSqrt105 - 3.0) + kI * (3.0 * kSqrt15 + kSqrt7)) / 16.0;
  ComplexVector chi_block(4);
  chi_block << phase * 4.0, phase * (-3.0 - kI * kSqrt7), 4.0,
      1.0 - kI * kSqrt15;
  chi_block /= std::sqrt(32.0);

  DarbouxParameters p;
  p.nu = Complex(0.0, -1.0);
  p.a = 5.0;
  p.chi0 = ComplexVector(4);
  for (int i = 0; i < 4; ++i) p.chi0(kPerm[i]) = chi_block(i);
  return p;
}

// ---------------------------------------------------------------------------
// multi-species family
// ---------------------------------------------------------------------------

bool MultiSpeciesConfig::oscillation_free() const {
  return std::abs(a_tilde()) < 1e-12;
}

void MultiSpeciesConfig::validate() const {
  if (m < 1) throw std::invalid_argument("MultiSpeciesConfig: m must be >= 1");
  if (k < 0 || l < 0 || l > k)
    throw std::invalid_argument("MultiSpeciesConfig: need 0 <= l <= k");
  const double m2 = 4.0 * static_cast<double>(m) * static_cast<double>(m);
  if (!(a > 0.0) || !(m2 < a * a + 4.0 * b) || !(a * a + 4.0 * b < a * a))
    throw std::invalid_argument(
        "MultiSpeciesConfig: positivity window 0 < 4m^2 < a^2+4b < a^2 "
        "violated");
  const size_t want = static_cast<size_t>(l) + 1;
  if (alphas.size() != want || betas.size() != want)
    throw std::invalid_argument(
        "MultiSpeciesConfig: alphas/betas must have l+1 entries");
  double weight = 0.0;
  for (const Complex& v : alphas) weight += std::norm(v);
  for (const Complex& v : betas) weight += std::norm(v);
  if (weight == 0.0)
    throw std::invalid_argument(
        "MultiSpeciesConfig: alphas and betas are all zero");
}

OperatorMatrix multispecies_hamiltonian(const MultiSpeciesConfig& cfg) {
  const Eigen::Index d = cfg.dim();
  OperatorMatrix h = OperatorMatrix::Zero(d, d);
  for (int n = 0; n < 3; ++n)
    for (int j = 0; j <= cfg.l; ++j) {
      const Eigen::Index idx = n * (cfg.l + 1) + j;
      h(idx, idx) = static_cast<double>(cfg.k + n * cfg.m);
    }
  return h;
}

DensityState multispecies_seed(const MultiSpeciesConfig& cfg) {
  cfg.validate();
  const double mid =
      (cfg.a + std::sqrt(cfg.a * cfg.a +
                         4.0 * (cfg.b - static_cast<double>(cfg.m * cfg.m)))) /
      2.0;
  const double off = -std::sqrt(cfg.a * cfg.a + 4.0 * cfg.b) / 2.0;
  const Eigen::Index stride = cfg.l + 1;
  OperatorMatrix m = OperatorMatrix::Zero(cfg.dim(), cfg.dim());
  for (int j = 0; j <= cfg.l; ++j) {
    m(j, j) = cfg.a / 2.0;
    m(stride + j, stride + j) = mid;
    m(2 * stride + j, 2 * stride + j) = cfg.a / 2.0;
    m(j, 2 * stride + j) = off;
    m(2 * stride + j, j) = off;
  }
  return DensityState(std::move(m));
}

OperatorMatrix multispecies_delta(const MultiSpeciesConfig& cfg) {
  const Eigen::Index stride = cfg.l + 1;
  OperatorMatrix d = cfg.b * OperatorMatrix::Identity(cfg.dim(), cfg.dim());
  for (int j = 0; j <= cfg.l; ++j)
    d(stride + j, stride + j) -= static_cast<double>(cfg.m * cfg.m);
  return d;
}

namespace {

// Components of the dressing vector split by Delta sector.
struct SplitVector {
  ComplexVector outer;  // the |0_j>, |2_j> part
  ComplexVector inner;  // the |1_j> part
};

SplitVector multispecies_phi_split(const MultiSpeciesConfig& cfg) {
  const double root =
      std::sqrt(cfg.a * cfg.a +
                4.0 * (cfg.b - static_cast<double>(cfg.m * cfg.m)));
  const Complex a0 = -(2.0 * kI * static_cast<double>(cfg.m) + root) /
                     std::sqrt(cfg.a * cfg.a + 4.0 * cfg.b);
  const Eigen::Index stride = cfg.l + 1;
  SplitVector sv;
  sv.outer = ComplexVector::Zero(cfg.dim());
  sv.inner = ComplexVector::Zero(cfg.dim());
  for (int j = 0; j <= cfg.l; ++j) {
    sv.outer(j) = cfg.alphas[static_cast<size_t>(j)] * a0 / std::sqrt(2.0);
    sv.outer(2 * stride + j) = cfg.alphas[static_cast<size_t>(j)] / std::sqrt(2.0);
    sv.inner(stride + j) = cfg.betas[static_cast<size_t>(j)];
  }
  return sv;
}

}  // namespace

ComplexVector multispecies_eigenvector(const MultiSpeciesConfig& cfg) {
  const SplitVector sv = multispecies_phi_split(cfg);
  return sv.outer + sv.inner;
}

Complex multispecies_eigenvalue(const MultiSpeciesConfig& cfg) {
  const double root =
      std::sqrt(cfg.a * cfg.a +
                4.0 * (cfg.b - static_cast<double>(cfg.m * cfg.m)));
  return Complex((cfg.a + root) / 2.0, -static_cast<double>(cfg.k + cfg.m));
}

DensityState multispecies_solution(const MultiSpeciesConfig& cfg, double t) {
  cfg.validate();
  const SplitVector sv = multispecies_phi_split(cfg);
  const double wa = sv.outer.squaredNorm();
  const double wb = sv.inner.squaredNorm();

  // W(t) = (phi_outer + e^{h m^2 t} phi_inner) / sqrt(F), kept overflow-safe
  // by normalizing with the dominant exponential.
  const double q = cfg.h * static_cast<double>(cfg.m * cfg.m) * t;
  ComplexVector w;
  double f;
  if (q <= 0.0) {
    w = sv.outer + std::exp(q) * sv.inner;
    f = wa + std::exp(2.0 * q) * wb;
  } else {
    w = std::exp(-q) * sv.outer + sv.inner;
    f = std::exp(-2.0 * q) * wa + wb;
  }
  if (!(f > 1e-250))
    throw std::runtime_error("multispecies_solution: degenerate normalization");
  w /= std::sqrt(f);

  const OperatorMatrix h_op = multispecies_hamiltonian(cfg);
  const OperatorMatrix ww = w * w.adjoint();
  OperatorMatrix inner =
      multispecies_seed(cfg).matrix() + 2.0 * kI * (ww * h_op - h_op * ww);

  // Outer oscillation e^{-i a_tilde H t}; H is diagonal here.
  const double rate = cfg.a_tilde();
  const Eigen::Index d = cfg.dim();
  OperatorMatrix out(d, d);
  for (Eigen::Index r = 0; r < d; ++r)
    for (Eigen::Index c = 0; c < d; ++c) {
      const double phase = -rate * (h_op(r, r).real() - h_op(c, c).real()) * t;
      out(r, c) = inner(r, c) * std::polar(1.0, phase);
    }
  return DensityState(std::move(out));
}

CompositeLayout multispecies_layout(const MultiSpeciesConfig& cfg) {
  return CompositeLayout{
      {static_cast<Eigen::Index>(cfg.k + 2 * cfg.m + 1),
       static_cast<Eigen::Index>(cfg.l + 1)}};
}

OperatorMatrix multispecies_embed(const MultiSpeciesConfig& cfg,
                                  const OperatorMatrix& compact) {
  if (compact.rows() != cfg.dim() || compact.cols() != cfg.dim())
    throw std::invalid_argument("multispecies_embed: dimension mismatch");
  const Eigen::Index stride = cfg.l + 1;
  const Eigen::Index big = (cfg.k + 2 * cfg.m + 1) * (cfg.l + 1);
  std::vector<Eigen::Index> map(static_cast<size_t>(cfg.dim()));
  for (int n = 0; n < 3; ++n)
    for (int j = 0; j <= cfg.l; ++j)
      map[static_cast<size_t>(n * stride + j)] =
          static_cast<Eigen::Index>(cfg.k + n * cfg.m - j) * (cfg.l + 1) + j;

  OperatorMatrix out = OperatorMatrix::Zero(big, big);
  for (Eigen::Index r = 0; r < cfg.dim(); ++r)
    for (Eigen::Index c = 0; c < cfg.dim(); ++c)
      out(map[static_cast<size_t>(r)], map[static_cast<size_t>(c)]) =
          compact(r, c);
  return out;
}

DensityState multispecies_reduce_species1(const MultiSpeciesConfig& cfg,
                                          const DensityState& state) {
  const DensityState big(multispecies_embed(cfg, state.matrix()),
                         state.hermiticity_tol(), state.positivity_tol());
  return partial_trace(big, multispecies_layout(cfg), 0);
}

DensityState multispecies_reduce_species2(const MultiSpeciesConfig& cfg,
                                          const DensityState& state) {
  const DensityState big(multispecies_embed(cfg, state.matrix()),
                         state.hermiticity_tol(), state.positivity_tol());
  return partial_trace(big, multispecies_layout(cfg), 1);
}

MultiSpeciesConfig species_example_config(double t0, double t1) {
  MultiSpeciesConfig cfg;
  cfg.a = 5.0;
  cfg.b = -4.0;
  cfg.m = 1;
  cfg.k = 1;
  cfg.l = 1;
  cfg.h = -0.25;
  cfg.alphas = {Complex(1.0 / std::sqrt(2.0), 0.0),
                Complex(1.0 / std::sqrt(2.0), 0.0)};
  cfg.betas = {Complex(std::exp(t0 / 4.0), 0.0),
               Complex(std::exp(t1 / 4.0), 0.0)};
  return cfg;
}

// ---------------------------------------------------------------------------
// switching functions
// ---------------------------------------------------------------------------

SwitchingValues switching_functions(double t, const SwitchingProfile& p) {
  const double e_t = t / 2.0;
  const double e_t0 = p.t0 / 2.0;
  const double e_t1 = p.t1 / 2.0;
  const double m = std::max(e_t, std::max(e_t0, e_t1));
  const double den =
      std::exp(e_t - m) + std::exp(e_t0 - m) + std::exp(e_t1 - m);
  SwitchingValues v;
  v.f = std::exp(e_t - m) / den;
  v.f0 = std::exp((t + p.t0) / 4.0 - m) / den;
  v.f1 = std::exp((t + p.t1) / 4.0 - m) / den;
  return v;
}

}  // namespace nvn
