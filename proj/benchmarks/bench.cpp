// Copyright 2026 The mfglq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include "mfglq/datamat.hpp"
#include "mfglq/examples.hpp"
#include "mfglq/learn_pi.hpp"
#include "mfglq/learn_vi.hpp"
#include "mfglq/linalg.hpp"
#include "mfglq/simulate.hpp"

namespace {

using namespace mfglq;

Matrix example1_gain() { return (Matrix(1, 2) << 35, 25).finished(); }

FeedbackPolicy example1_policy() {
  return {example1_gain(), ExplorationSignal::sinusoid_sum(100, 0.3, -1000, 1000, 7)};
}

const DataMatrices& example1_data() {
  static const DataMatrices dm = [] {
    const SystemModel m = examples::example1();
    return build_data_matrices(
        integrate_mean_ode(m, Vector::Ones(2), example1_policy(), {0.0, 1e-4, 20000}),
        IntervalSet::uniform(0.0, 0.1, 20), m.rho);
  }();
  return dm;
}

// Path-steps per second of the Euler-Maruyama Monte-Carlo kernel.
void BM_MonteCarloMean(benchmark::State& state) {
  const SystemModel m = examples::example1();
  const TimeGrid grid{0.0, 1e-4, 2000};
  const auto samples = static_cast<std::size_t>(state.range(0));
  const InitialLaw init = InitialLaw::point(Vector::Ones(2));
  const FeedbackPolicy pol = example1_policy();
  for (auto _ : state) {
    benchmark::DoNotOptimize(monte_carlo_mean(m, init, pol, grid, {samples, 1, 1}));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(samples) *
                          static_cast<std::int64_t>(grid.steps));
}
BENCHMARK(BM_MonteCarloMean)->Arg(1024)->Arg(8192)->Unit(benchmark::kMillisecond);

void BM_IntegrateMeanOde(benchmark::State& state) {
  const SystemModel m = examples::example1();
  const FeedbackPolicy pol = example1_policy();
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        integrate_mean_ode(m, Vector::Ones(2), pol, {0.0, 1e-4, 20000}));
  }
}
BENCHMARK(BM_IntegrateMeanOde)->Unit(benchmark::kMillisecond);

void BM_BuildDataMatrices(benchmark::State& state) {
  const SystemModel m = examples::example1();
  const MeanTrajectory traj =
      integrate_mean_ode(m, Vector::Ones(2), example1_policy(), {0.0, 1e-4, 20000});
  const IntervalSet iv = IntervalSet::uniform(0.0, 0.1, 20);
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_data_matrices(traj, iv, m.rho));
  }
}
BENCHMARK(BM_BuildDataMatrices)->Unit(benchmark::kMillisecond);

void BM_PiStep(benchmark::State& state) {
  const SystemModel m = examples::example1();
  const DataMatrices& dm = example1_data();
  const Matrix k = example1_gain();
  for (auto _ : state) {
    benchmark::DoNotOptimize(pi_step(dm, k, m.Q, m.R));
  }
}
BENCHMARK(BM_PiStep);

void BM_ViStepSolve(benchmark::State& state) {
  const DataMatrices& dm = example1_data();
  const SymMatrix p = SymMatrix::identity(2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(vi_step_solve(dm, p));
  }
}
BENCHMARK(BM_ViStepSolve);

void BM_SolveLyapunov(benchmark::State& state) {
  const auto n = static_cast<Index>(state.range(0));
  Matrix f = Matrix::Random(n, n);
  f -= (f.norm() + 1.0) * Matrix::Identity(n, n);
  const SymMatrix w = SymMatrix::identity(n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_lyapunov(f, w));
  }
}
BENCHMARK(BM_SolveLyapunov)->Arg(2)->Arg(4)->Arg(8);

void BM_ModelPi(benchmark::State& state) {
  const SystemModel m = examples::example1();
  const Matrix k = example1_gain();
  for (auto _ : state) {
    benchmark::DoNotOptimize(model_pi(m, k, k));
  }
}
BENCHMARK(BM_ModelPi);

}  // namespace

BENCHMARK_MAIN();
