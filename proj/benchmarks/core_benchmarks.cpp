#include <benchmark/benchmark.h>

#include <random>

#include "nvn/exact_solutions.hpp"
#include "nvn/integrator.hpp"
#include "nvn/observables.hpp"

namespace {

nvn::OperatorMatrix random_hermitian(Eigen::Index d, unsigned seed) {
  std::mt19937 gen(seed);
  std::normal_distribution<double> n(0.0, 1.0);
  nvn::OperatorMatrix g(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) g(i, j) = nvn::Complex(n(gen), n(gen));
  return nvn::OperatorMatrix(0.5 * (g + g.adjoint()));
}

void BM_Commutator(benchmark::State& state) {
  const auto d = static_cast<Eigen::Index>(state.range(0));
  const nvn::OperatorMatrix a = random_hermitian(d, 1);
  const nvn::OperatorMatrix b = random_hermitian(d, 2);
  for (auto _ : state) benchmark::DoNotOptimize(nvn::commutator(a, b));
}
BENCHMARK(BM_Commutator)->Arg(4)->Arg(8)->Arg(16);

void BM_HermitianEigensystem(benchmark::State& state) {
  const auto d = static_cast<Eigen::Index>(state.range(0));
  const nvn::OperatorMatrix a = random_hermitian(d, 3);
  for (auto _ : state)
    benchmark::DoNotOptimize(nvn::hermitian_eigensystem(a));
}
BENCHMARK(BM_HermitianEigensystem)->Arg(4)->Arg(8)->Arg(16);

void BM_PartialTrace(benchmark::State& state) {
  const nvn::OperatorMatrix g = random_hermitian(16, 4);
  const nvn::DensityState rho(nvn::OperatorMatrix(
      g * g.adjoint() + 16.0 * nvn::OperatorMatrix::Identity(16, 16)));
  const nvn::CompositeLayout layout{{4, 4}};
  for (auto _ : state)
    benchmark::DoNotOptimize(nvn::partial_trace(rho, layout, 0));
}
BENCHMARK(BM_PartialTrace);

void BM_OrganismSolution(benchmark::State& state) {
  double t = -10.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(nvn::organism_solution(t));
    t += 0.1;
    if (t > 10.0) t = -10.0;
  }
}
BENCHMARK(BM_OrganismSolution);

void BM_Rk4Step(benchmark::State& state) {
  const nvn::OperatorMatrix h = nvn::organism_hamiltonian();
  const nvn::FeedbackPolynomial f = nvn::FeedbackPolynomial::square();
  const nvn::DensityState rho0 = nvn::organism_solution(0.0);
  for (auto _ : state)
    benchmark::DoNotOptimize(
        nvn::integrate(rho0, h, f, 0.0, 0.1, 1e-3,
                       nvn::IntegrateOptions{1000, 1e-6}));
}
BENCHMARK(BM_Rk4Step);

void BM_PositionDensity(benchmark::State& state) {
  nvn::MutationParams p;
  p.feedback_strength = nvn::MutationParams::critical_strength();
  const nvn::DensityState rho = nvn::mutation3(p, 0.0);
  const nvn::OscillatorBasis basis = nvn::OscillatorBasis::default_grid(0);
  for (auto _ : state)
    benchmark::DoNotOptimize(nvn::position_density(rho, basis));
}
BENCHMARK(BM_PositionDensity);

}  // namespace

BENCHMARK_MAIN();
