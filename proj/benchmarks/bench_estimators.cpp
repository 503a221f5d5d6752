#include <benchmark/benchmark.h>

#include <cmath>
#include <memory>

#include "pdemhe/hyperbolic_mhe.hpp"
#include "pdemhe/observer.hpp"
#include "pdemhe/parabolic_mhe.hpp"
#include "pdemhe/scenario.hpp"

using namespace pdemhe;

namespace {

CoefficientSet chebyshev() { return CoefficientSet::make_parabolic(ScalarFunction::chebyshev(21.0, 5)); }

void BM_ParabolicKernel(benchmark::State& state) {
  const Grid g(static_cast<std::size_t>(state.range(0)));
  const auto coeffs = chebyshev();
  for (auto _ : state) benchmark::DoNotOptimize(solve_parabolic_kernel(coeffs, g));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ParabolicKernel)->RangeMultiplier(2)->Range(51, 401)->Unit(benchmark::kMillisecond);

void BM_HyperbolicKernel(benchmark::State& state) {
  const Grid g(static_cast<std::size_t>(state.range(0)));
  const auto coeffs = CoefficientSet::make_hyperbolic(BivariateFunction::constant(1.0),
                                                      ScalarFunction::polynomial({0.0, 1.0}));
  for (auto _ : state) benchmark::DoNotOptimize(solve_hyperbolic_kernel(coeffs, g));
}
BENCHMARK(BM_HyperbolicKernel)->RangeMultiplier(2)->Range(51, 401)->Unit(benchmark::kMillisecond);

// Per-step cost of the estimator should scale with N * n_points and not with
// elapsed time; range(0) = n_points, range(1) = N.
void BM_ParabolicMheUpdate(benchmark::State& state) {
  const Grid g(static_cast<std::size_t>(state.range(0)));
  const double dt = 0.2 * g.dx() * g.dx();
  ParabolicMheOptions o;
  o.horizon = 200 * dt;
  o.modes = static_cast<int>(state.range(1));
  ParabolicMhe mhe(chebyshev(), g, dt, o);
  std::size_t k = 0;
  for (; k < 400; ++k) mhe.update(k * dt, std::sin(k * dt), std::cos(k * dt));
  for (auto _ : state) {
    mhe.update(k * dt, std::sin(k * dt), std::cos(k * dt));
    ++k;
  }
}
BENCHMARK(BM_ParabolicMheUpdate)->ArgsProduct({{51, 101, 201}, {4, 16}});

void BM_ParabolicMheEstimate(benchmark::State& state) {
  const Grid g(static_cast<std::size_t>(state.range(0)));
  const double dt = 0.2 * g.dx() * g.dx();
  ParabolicMheOptions o;
  o.horizon = 200 * dt;
  o.modes = 4;
  ParabolicMhe mhe(chebyshev(), g, dt, o);
  for (std::size_t k = 0; k < 400; ++k) mhe.update(k * dt, std::sin(k * dt), std::cos(k * dt));
  for (auto _ : state) benchmark::DoNotOptimize(mhe.estimate());
}
BENCHMARK(BM_ParabolicMheEstimate)->Arg(51)->Arg(101)->Arg(201);

void BM_ParabolicObserverStep(benchmark::State& state) {
  const Grid g(static_cast<std::size_t>(state.range(0)));
  const auto coeffs = chebyshev();
  auto model = std::make_shared<ParabolicModel>(coeffs, g);
  ParabolicObserverState obs{Profile::constant(g, 1.0), 0.0, model,
                             observer_gain_parabolic(solve_parabolic_kernel(coeffs, g))};
  obs.profile[0] = 0.0;
  const double dt = 0.2 * g.dx() * g.dx();
  for (auto _ : state) step_observer_parabolic(obs, 0.0, 1.0, dt);
}
BENCHMARK(BM_ParabolicObserverStep)->Arg(51)->Arg(101)->Arg(201);

void BM_HyperbolicMheEstimate(benchmark::State& state) {
  const Grid g(static_cast<std::size_t>(state.range(0)));
  const double dt = g.dx();
  const auto coeffs = CoefficientSet::make_hyperbolic(BivariateFunction::constant(1.0),
                                                      ScalarFunction::polynomial({0.0, 1.0}));
  HyperbolicMhe mhe(coeffs, g, dt);
  const auto steps = g.size() + 10;
  for (std::size_t k = 0; k < steps; ++k) mhe.push(k * dt, std::sin(k * dt), std::cos(k * dt));
  const double t = (steps - 1) * dt;
  for (auto _ : state) benchmark::DoNotOptimize(mhe.estimate(t));
}
BENCHMARK(BM_HyperbolicMheEstimate)->Arg(101)->Arg(201);

}  // namespace
BENCHMARK_MAIN();
