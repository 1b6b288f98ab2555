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

// Trajectory generation: agent SDE paths (Euler-Maruyama), Monte-Carlo means
// realizing the expectation system dX = (AX + BV) dt, the deterministic
// aggregate quantity and the finite-population consistency experiment.

#ifndef MFGLQ_SIMULATE_HPP_
#define MFGLQ_SIMULATE_HPP_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "mfglq/linalg.hpp"
#include "mfglq/model.hpp"

namespace mfglq {

// Grid points t0 + i dt for i = 0..steps.
struct TimeGrid {
  double t0 = 0.0;
  double dt = 1e-4;
  std::size_t steps = 20000;

  double at(std::size_t i) const { return t0 + static_cast<double>(i) * dt; }
  std::size_t points() const { return steps + 1; }
  double t_end() const { return at(steps); }

  // Index of the grid point nearest to t. Throws RangeError when t lies more
  // than dt/2 outside [t0, t_end].
  std::size_t nearest_index(double t) const;

  // Throws PreconditionError unless dt > 0 and steps >= 1.
  void validate() const;
};

// Scalar exploration signal e(t) = sum_r a_r sin(w_r t), added to every input
// channel.
class ExplorationSignal {
 public:
  enum class Kind { kNone, kSingleSinusoid, kSinusoidSum };

  ExplorationSignal() = default;
  ExplorationSignal(Kind kind, std::vector<double> amplitudes,
                    std::vector<double> frequencies, std::uint64_t seed = 0);

  static ExplorationSignal none() { return {}; }
  static ExplorationSignal single_sinusoid(double amplitude, double frequency);
  // `terms` frequencies drawn uniformly from [freq_lo, freq_hi] with `seed`,
  // each carrying `amplitude`.
  static ExplorationSignal sinusoid_sum(std::size_t terms, double amplitude,
                                        double freq_lo, double freq_hi,
                                        std::uint64_t seed);

  double operator()(double t) const;

  Kind kind() const { return kind_; }
  const std::vector<double>& amplitudes() const { return amplitudes_; }
  const std::vector<double>& frequencies() const { return frequencies_; }
  std::uint64_t seed() const { return seed_; }

 private:
  Kind kind_ = Kind::kNone;
  std::vector<double> amplitudes_;
  std::vector<double> frequencies_;
  std::uint64_t seed_ = 0;
};

// u(t) = -K x(t) + e(t).
struct FeedbackPolicy {
  Matrix K;
  ExplorationSignal e;
};

// Law of the initial state: a point mass or a uniform box.
class InitialLaw {
 public:
  static InitialLaw point(const Vector& x0);
  static InitialLaw uniform(const Vector& lo, const Vector& hi);

  bool is_point() const { return lo_ == hi_; }
  Index dim() const { return lo_.size(); }
  Vector mean() const { return 0.5 * (lo_ + hi_); }
  const Vector& lo() const { return lo_; }
  const Vector& hi() const { return hi_; }

  // Draw number `index` under `seed`; pure function of its arguments.
  Vector sample(std::uint64_t seed, std::uint64_t index) const;

 private:
  Vector lo_;
  Vector hi_;
};

// Samples of the mean state X (n x points) and mean input V (m x points),
// one column per grid point.
struct MeanTrajectory {
  TimeGrid grid;
  Matrix X;
  Matrix V;
};

// RK4 integration of dX = (AX + BV) dt with V = -K X + e(t).
// Throws DivergenceError at the first grid point whose state is non-finite or
// has grown beyond 1e10 * max(1, |X0|).
MeanTrajectory integrate_mean_ode(const SystemModel& model, const Vector& X0,
                                  const FeedbackPolicy& policy,
                                  const TimeGrid& grid);

// One Euler-Maruyama path of dx = (Ax + Bu) dt + C dW, u = -Kx + e(t).
// The Brownian increment of step k is keyed by (seed, path_index, k).
Matrix simulate_agent_sde(const SystemModel& model, const Vector& x0,
                          const FeedbackPolicy& policy, const TimeGrid& grid,
                          std::uint64_t seed, std::uint64_t path_index = 0);

struct MonteCarloOptions {
  std::size_t samples = 100000;
  std::uint64_t seed = 1;
  unsigned threads = 1;
};

// Average of `samples` Euler-Maruyama paths with initial states drawn from
// `init`. V = -K X + e(t) is formed from the averaged state. Path sums are
// reduced in path-index order, so the result does not depend on `threads`.
MeanTrajectory monte_carlo_mean(const SystemModel& model,
                                const InitialLaw& init,
                                const FeedbackPolicy& policy,
                                const TimeGrid& grid,
                                const MonteCarloOptions& opts);

// RK4 integration of dxhat = (A - B K_Y) xhat dt from xhat(0) = xi0.
Matrix aggregate_ode(const SystemModel& model, const Matrix& K_Y,
                     const Vector& xi0, const TimeGrid& grid);

struct PopulationRun {
  TimeGrid grid;
  std::size_t agents = 0;
  Vector xi0;                  // estimated E[x_i0]
  std::vector<Matrix> paths;   // one n x points matrix per agent
  Matrix average;              // population mean state
  Matrix aggregate;            // xhat
};

struct PopulationOptions {
  std::size_t agents = 200;
  std::size_t aggregate_samples = 100;
  std::uint64_t seed = 1;
};

// N agents under u_i = -K x_i - (K_Y - K) xhat, with xhat driven from the
// sample mean of `aggregate_samples` draws of `init`.
PopulationRun population_sim(const SystemModel& model, const GainPair& gains,
                             const InitialLaw& init, const TimeGrid& grid,
                             const PopulationOptions& opts);

// sup_t |average(t) - aggregate(t)| / sup_t |aggregate(t)|.
double consistency_gap(const PopulationRun& run);

// Trapezoidal approximation of
//   int e^{-rho t} [(x - xbar)' Q (x - xbar) + u' R u] dt
// over the grid; paths are n x points / m x points.
double discounted_cost(const SystemModel& model, const Matrix& x,
                       const Matrix& u, const Matrix& xbar, double rho,
                       const TimeGrid& grid);

}  // namespace mfglq

#endif  // MFGLQ_SIMULATE_HPP_
