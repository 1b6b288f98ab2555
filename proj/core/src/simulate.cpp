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

#include "mfglq/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <string>
#include <thread>

#include <boost/random/normal_distribution.hpp>

#include "mfglq/errors.hpp"
#include "mfglq/random.hpp"

namespace mfglq {

namespace {

// Stream tags separating the uses of one user seed.
constexpr std::uint64_t kNoiseStream = 1;
constexpr std::uint64_t kInitStream = 2;
constexpr std::uint64_t kAggregateStream = 3;
constexpr std::uint64_t kStepStride = 0xd1342543de82ef95ULL;

// Paths per reduction chunk. The chunk layout fixes the summation tree, so it
// must not depend on the thread count.
constexpr std::size_t kChunkPaths = 4096;
constexpr std::size_t kBlockPaths = 64;

// A state whose norm exceeds this multiple of max(1, |x(0)|) has blown up.
constexpr double kBlowUpFactor = 1e10;

[[noreturn]] void throw_divergence(const char* what, std::size_t step) {
  throw DivergenceError(std::string(what) + ": state diverged at grid point " +
                            std::to_string(step),
                        step);
}

void check_bounded_columns(const Matrix& path, const char* what) {
  if (path.cols() == 0) return;
  const double cap = kBlowUpFactor * std::max(1.0, path.col(0).norm());
  for (Index k = 0; k < path.cols(); ++k) {
    if (!path.col(k).allFinite() || path.col(k).norm() > cap) {
      throw_divergence(what, static_cast<std::size_t>(k));
    }
  }
}

// One Euler step for a block of `count` paths, component-major layout.
// Fixed N/P (> 0) let the compiler unroll the small inner sums; 0 means the
// runtime sizes are used.
template <int N, int P>
void euler_block(std::size_t n_rt, std::size_t p_rt, const double* acl,
                 const double* c, const double* drv, double dt,
                 std::size_t count, const double* x, const double* dw,
                 double* next) {
  const std::size_t n = N > 0 ? static_cast<std::size_t>(N) : n_rt;
  const std::size_t p = P > 0 ? static_cast<std::size_t>(P) : p_rt;
  for (std::size_t i = 0; i < n; ++i) {
    const double* a = acl + i * n;
    const double* g = c + i * p;
    const double d = drv[i];
    const double* xi = x + i * count;
    double* out = next + i * count;
    for (std::size_t b = 0; b < count; ++b) {
      double f = 0.0;
      for (std::size_t j = 0; j < n; ++j) f += a[j] * x[j * count + b];
      double w = 0.0;
      for (std::size_t l = 0; l < p; ++l) w += g[l] * dw[l * count + b];
      out[b] = xi[b] + dt * (f + d) + w;
    }
  }
}

using BlockStep = void (*)(std::size_t, std::size_t, const double*,
                           const double*, const double*, double, std::size_t,
                           const double*, const double*, double*);

BlockStep pick_block_step(Index n, Index p) {
  if (n == 1 && p == 1) return &euler_block<1, 1>;
  if (n == 2 && p == 1) return &euler_block<2, 1>;
  if (n == 2 && p == 2) return &euler_block<2, 2>;
  if (n == 3 && p == 1) return &euler_block<3, 1>;
  if (n == 3 && p == 2) return &euler_block<3, 2>;
  if (n == 3 && p == 3) return &euler_block<3, 3>;
  return &euler_block<0, 0>;
}

struct EulerKernel {
  Index n = 0;
  Index p = 0;
  std::vector<double> acl;  // closed-loop drift A - B K, row-major
  Matrix drive;             // n x points, B times the feedforward input
  std::vector<double> c;    // diffusion, row-major
  double dt = 0.0;
  double sqrt_dt = 0.0;
  std::uint64_t seed = 0;

  // Advances `count` paths over the whole grid. States are stored
  // component-major: states[i * count + b] is component i of path b.
  // sink(k, x, count) sees the block at grid point k, starting at k = 0.
  template <typename Sink>
  void run(std::uint64_t first_path, std::size_t count, double* states,
           std::size_t steps, Sink&& sink) const {
    boost::random::normal_distribution<double> normal;
    const std::size_t nn = static_cast<std::size_t>(n);
    const std::size_t pp = static_cast<std::size_t>(p);
    const BlockStep step = pick_block_step(n, p);
    std::vector<std::uint64_t> keys(count);
    for (std::size_t b = 0; b < count; ++b) {
      keys[b] = derive_key(seed, first_path + b, kNoiseStream);
    }
    sink(std::size_t{0}, static_cast<const double*>(states), count);
    std::vector<double> next(nn * count);
    std::vector<double> dw(pp * count);
    for (std::size_t k = 0; k < steps; ++k) {
      for (std::size_t b = 0; b < count; ++b) {
        CounterEngine engine(keys[b] + kStepStride * (k + 1));
        for (std::size_t l = 0; l < pp; ++l) {
          dw[l * count + b] = sqrt_dt * normal(engine);
        }
      }
      step(nn, pp, acl.data(), c.data(),
           drive.col(static_cast<Index>(k)).data(), dt, count, states,
           dw.data(), next.data());
      std::copy(next.begin(), next.end(), states);
      sink(k + 1, static_cast<const double*>(states), count);
    }
  }
};

std::vector<double> row_major(const Matrix& m) {
  std::vector<double> out(static_cast<std::size_t>(m.size()));
  Eigen::Map<Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                           Eigen::RowMajor>>(out.data(), m.rows(), m.cols()) = m;
  return out;
}

EulerKernel make_kernel(const SystemModel& model, const Matrix& K,
                        const Matrix& feedforward, const TimeGrid& grid,
                        std::uint64_t seed) {
  EulerKernel kernel;
  kernel.n = model.n();
  kernel.p = model.p();
  kernel.acl = row_major(model.A - model.B * K);
  kernel.drive = model.B * feedforward;
  kernel.c = row_major(model.C);
  kernel.dt = grid.dt;
  kernel.sqrt_dt = std::sqrt(grid.dt);
  kernel.seed = seed;
  return kernel;
}

// m x points matrix of e(t_k) broadcast to every input channel.
Matrix sample_signal(const ExplorationSignal& e, Index m,
                     const TimeGrid& grid) {
  Matrix out(m, static_cast<Index>(grid.points()));
  for (std::size_t k = 0; k < grid.points(); ++k) {
    out.col(static_cast<Index>(k)).setConstant(e(grid.at(k)));
  }
  return out;
}

// Classic RK4 for dx = (F x + g(t)) dt on the grid.
template <typename Forcing>
Matrix rk4(const Matrix& f, const Vector& x0, const TimeGrid& grid,
           Forcing&& forcing, const char* what) {
  const Index n = f.rows();
  Matrix path(n, static_cast<Index>(grid.points()));
  Vector x = x0;
  path.col(0) = x;
  const double h = grid.dt;
  const double cap = kBlowUpFactor * std::max(1.0, x0.norm());
  for (std::size_t k = 0; k < grid.steps; ++k) {
    const double t = grid.at(k);
    const Vector g0 = forcing(t);
    const Vector gh = forcing(t + 0.5 * h);
    const Vector g1 = forcing(grid.at(k + 1));
    const Vector k1 = f * x + g0;
    const Vector k2 = f * (x + 0.5 * h * k1) + gh;
    const Vector k3 = f * (x + 0.5 * h * k2) + gh;
    const Vector k4 = f * (x + h * k3) + g1;
    x += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (!x.allFinite() || x.norm() > cap) throw_divergence(what, k + 1);
    path.col(static_cast<Index>(k + 1)) = x;
  }
  return path;
}

void require_policy(const SystemModel& model, const Matrix& K) {
  if (K.rows() != model.m() || K.cols() != model.n()) {
    throw DimensionError("feedback gain must be " + std::to_string(model.m()) +
                         "x" + std::to_string(model.n()));
  }
}

void require_state(const SystemModel& model, const Vector& x, const char* what) {
  if (x.size() != model.n()) {
    throw DimensionError(std::string(what) + " must have " +
                         std::to_string(model.n()) + " entries");
  }
}

}  // namespace

std::size_t TimeGrid::nearest_index(double t) const {
  const double pos = (t - t0) / dt;
  if (!(pos >= -0.5 && pos <= static_cast<double>(steps) + 0.5)) {
    throw RangeError("time " + std::to_string(t) + " lies outside the grid [" +
                     std::to_string(t0) + ", " + std::to_string(t_end()) + "]");
  }
  const double rounded = std::round(pos);
  return static_cast<std::size_t>(
      std::clamp(rounded, 0.0, static_cast<double>(steps)));
}

void TimeGrid::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt) || !std::isfinite(t0)) {
    throw PreconditionError("time grid needs finite t0 and dt > 0");
  }
  if (steps < 1) throw PreconditionError("time grid needs at least one step");
}

ExplorationSignal::ExplorationSignal(Kind kind, std::vector<double> amplitudes,
                                     std::vector<double> frequencies,
                                     std::uint64_t seed)
    : kind_(kind),
      amplitudes_(std::move(amplitudes)),
      frequencies_(std::move(frequencies)),
      seed_(seed) {
  if (amplitudes_.size() != frequencies_.size()) {
    throw DimensionError("exploration signal: amplitude/frequency count mismatch");
  }
  for (std::size_t r = 0; r < frequencies_.size(); ++r) {
    if (!std::isfinite(frequencies_[r]) || !std::isfinite(amplitudes_[r])) {
      throw PreconditionError("exploration signal: non-finite parameter");
    }
  }
  if (kind_ == Kind::kNone && !amplitudes_.empty()) {
    throw PreconditionError("exploration signal of kind none has terms");
  }
}

ExplorationSignal ExplorationSignal::single_sinusoid(double amplitude,
                                                     double frequency) {
  return ExplorationSignal(Kind::kSingleSinusoid, {amplitude}, {frequency});
}

ExplorationSignal ExplorationSignal::sinusoid_sum(std::size_t terms,
                                                  double amplitude,
                                                  double freq_lo,
                                                  double freq_hi,
                                                  std::uint64_t seed) {
  std::vector<double> freqs(terms);
  CounterEngine engine(derive_key(seed, 0x5157));
  for (auto& w : freqs) w = freq_lo + (freq_hi - freq_lo) * to_unit(engine());
  return ExplorationSignal(Kind::kSinusoidSum,
                           std::vector<double>(terms, amplitude),
                           std::move(freqs), seed);
}

double ExplorationSignal::operator()(double t) const {
  double e = 0.0;
  for (std::size_t r = 0; r < frequencies_.size(); ++r) {
    e += amplitudes_[r] * std::sin(frequencies_[r] * t);
  }
  return e;
}

InitialLaw InitialLaw::point(const Vector& x0) {
  InitialLaw law;
  law.lo_ = x0;
  law.hi_ = x0;
  return law;
}

InitialLaw InitialLaw::uniform(const Vector& lo, const Vector& hi) {
  if (lo.size() != hi.size()) {
    throw DimensionError("uniform initial law: bounds differ in size");
  }
  if ((hi.array() < lo.array()).any()) {
    throw PreconditionError("uniform initial law: hi < lo");
  }
  InitialLaw law;
  law.lo_ = lo;
  law.hi_ = hi;
  return law;
}

Vector InitialLaw::sample(std::uint64_t seed, std::uint64_t index) const {
  if (is_point()) return lo_;
  CounterEngine engine(derive_key(seed, index, kInitStream));
  Vector x(lo_.size());
  for (Index i = 0; i < x.size(); ++i) {
    x(i) = lo_(i) + (hi_(i) - lo_(i)) * to_unit(engine());
  }
  return x;
}

MeanTrajectory integrate_mean_ode(const SystemModel& model, const Vector& X0,
                                  const FeedbackPolicy& policy,
                                  const TimeGrid& grid) {
  grid.validate();
  require_policy(model, policy.K);
  require_state(model, X0, "X0");
  const Matrix acl = model.A - model.B * policy.K;
  const Vector b_sum = model.B.rowwise().sum();
  auto forcing = [&](double t) -> Vector { return b_sum * policy.e(t); };

  MeanTrajectory traj;
  traj.grid = grid;
  traj.X = rk4(acl, X0, grid, forcing, "integrate_mean_ode");
  traj.V = -policy.K * traj.X + sample_signal(policy.e, model.m(), grid);
  return traj;
}

Matrix simulate_agent_sde(const SystemModel& model, const Vector& x0,
                          const FeedbackPolicy& policy, const TimeGrid& grid,
                          std::uint64_t seed, std::uint64_t path_index) {
  grid.validate();
  require_policy(model, policy.K);
  require_state(model, x0, "x0");
  const EulerKernel kernel = make_kernel(
      model, policy.K, sample_signal(policy.e, model.m(), grid), grid, seed);
  Matrix path(model.n(), static_cast<Index>(grid.points()));
  Vector state = x0;
  kernel.run(path_index, 1, state.data(), grid.steps,
             [&](std::size_t k, const double* x, std::size_t) {
               path.col(static_cast<Index>(k)) =
                   Eigen::Map<const Vector>(x, model.n());
             });
  check_bounded_columns(path, "simulate_agent_sde");
  return path;
}

MeanTrajectory monte_carlo_mean(const SystemModel& model,
                                const InitialLaw& init,
                                const FeedbackPolicy& policy,
                                const TimeGrid& grid,
                                const MonteCarloOptions& opts) {
  grid.validate();
  require_policy(model, policy.K);
  if (init.dim() != model.n()) {
    throw DimensionError("initial law dimension does not match the model");
  }
  if (opts.samples < 1) {
    throw PreconditionError("monte_carlo_mean needs at least one sample");
  }
  const Index n = model.n();
  const Index points = static_cast<Index>(grid.points());
  const Matrix signal = sample_signal(policy.e, model.m(), grid);
  const EulerKernel kernel = make_kernel(model, policy.K, signal, grid, opts.seed);

  const std::size_t chunks = (opts.samples + kChunkPaths - 1) / kChunkPaths;
  auto run_chunk = [&](std::size_t chunk, Matrix& sum) {
    sum.setZero(n, points);
    const std::size_t begin = chunk * kChunkPaths;
    const std::size_t end = std::min(opts.samples, begin + kChunkPaths);
    std::vector<double> states(kBlockPaths * static_cast<std::size_t>(n));
    for (std::size_t first = begin; first < end; first += kBlockPaths) {
      const std::size_t count = std::min(kBlockPaths, end - first);
      for (std::size_t b = 0; b < count; ++b) {
        const Vector x0 = init.sample(opts.seed, first + b);
        for (Index i = 0; i < n; ++i) {
          states[static_cast<std::size_t>(i) * count + b] = x0(i);
        }
      }
      kernel.run(first, count, states.data(), grid.steps,
                 [&](std::size_t k, const double* x, std::size_t cnt) {
                   double* col = sum.col(static_cast<Index>(k)).data();
                   for (Index i = 0; i < n; ++i) {
                     const double* xi = x + static_cast<std::size_t>(i) * cnt;
                     double acc = 0.0;
                     for (std::size_t b = 0; b < cnt; ++b) acc += xi[b];
                     col[i] += acc;
                   }
                 });
    }
  };

  const unsigned threads =
      std::max(1u, std::min<unsigned>(opts.threads, static_cast<unsigned>(chunks)));
  std::vector<Matrix> partial(threads);
  Matrix total = Matrix::Zero(n, points);
  for (std::size_t wave = 0; wave < chunks; wave += threads) {
    const std::size_t active = std::min<std::size_t>(threads, chunks - wave);
    if (active == 1) {
      run_chunk(wave, partial[0]);
    } else {
      std::vector<std::thread> workers;
      workers.reserve(active);
      for (std::size_t t = 0; t < active; ++t) {
        workers.emplace_back([&, t] { run_chunk(wave + t, partial[t]); });
      }
      for (auto& w : workers) w.join();
    }
    for (std::size_t t = 0; t < active; ++t) total += partial[t];
  }

  MeanTrajectory traj;
  traj.grid = grid;
  traj.X = total / static_cast<double>(opts.samples);
  check_bounded_columns(traj.X, "monte_carlo_mean");
  traj.V = -policy.K * traj.X + signal;
  return traj;
}

Matrix aggregate_ode(const SystemModel& model, const Matrix& K_Y,
                     const Vector& xi0, const TimeGrid& grid) {
  grid.validate();
  require_policy(model, K_Y);
  require_state(model, xi0, "xi0");
  const Vector zero = Vector::Zero(model.n());
  return rk4(model.A - model.B * K_Y, xi0, grid,
             [&](double) -> const Vector& { return zero; }, "aggregate_ode");
}

PopulationRun population_sim(const SystemModel& model, const GainPair& gains,
                             const InitialLaw& init, const TimeGrid& grid,
                             const PopulationOptions& opts) {
  grid.validate();
  require_policy(model, gains.K);
  require_policy(model, gains.K_Y);
  if (init.dim() != model.n()) {
    throw DimensionError("initial law dimension does not match the model");
  }
  if (opts.agents < 1) throw PreconditionError("population needs N >= 1");
  if (opts.aggregate_samples < 1) {
    throw PreconditionError("aggregate estimate needs at least one sample");
  }
  const Index n = model.n();

  PopulationRun run;
  run.grid = grid;
  run.agents = opts.agents;
  run.xi0 = Vector::Zero(n);
  const std::uint64_t agg_seed = derive_key(opts.seed, kAggregateStream);
  for (std::size_t s = 0; s < opts.aggregate_samples; ++s) {
    run.xi0 += init.sample(agg_seed, s);
  }
  run.xi0 /= static_cast<double>(opts.aggregate_samples);
  run.aggregate = aggregate_ode(model, gains.K_Y, run.xi0, grid);

  const Matrix feedforward = -(gains.K_Y - gains.K) * run.aggregate;
  const EulerKernel kernel =
      make_kernel(model, gains.K, feedforward, grid, opts.seed);
  run.paths.reserve(opts.agents);
  for (std::size_t i = 0; i < opts.agents; ++i) {
    Matrix path(n, static_cast<Index>(grid.points()));
    Vector state = init.sample(opts.seed, i);
    kernel.run(i, 1, state.data(), grid.steps,
               [&](std::size_t k, const double* x, std::size_t) {
                 path.col(static_cast<Index>(k)) = Eigen::Map<const Vector>(x, n);
               });
    check_bounded_columns(path, "population_sim");
    run.paths.push_back(std::move(path));
  }

  run.average = Matrix::Zero(n, static_cast<Index>(grid.points()));
  for (const auto& path : run.paths) run.average += path;
  run.average /= static_cast<double>(opts.agents);
  return run;
}

double consistency_gap(const PopulationRun& run) {
  const double gap = (run.average - run.aggregate).colwise().norm().maxCoeff();
  const double scale = run.aggregate.colwise().norm().maxCoeff();
  return scale > 0.0 ? gap / scale : gap;
}

double discounted_cost(const SystemModel& model, const Matrix& x,
                       const Matrix& u, const Matrix& xbar, double rho,
                       const TimeGrid& grid) {
  const Index points = static_cast<Index>(grid.points());
  if (x.cols() != points || u.cols() != points || xbar.cols() != points ||
      x.rows() != model.n() || xbar.rows() != model.n() ||
      u.rows() != model.m()) {
    throw DimensionError("discounted_cost: paths do not match the grid");
  }
  auto integrand = [&](Index k) {
    const Vector dev = x.col(k) - xbar.col(k);
    const double value = dev.dot(model.Q.matrix() * dev) +
                         u.col(k).dot(model.R.matrix() * u.col(k));
    return std::exp(-rho * grid.at(static_cast<std::size_t>(k))) * value;
  };
  double total = 0.0;
  double left = integrand(0);
  for (Index k = 1; k < points; ++k) {
    const double right = integrand(k);
    total += 0.5 * grid.dt * (left + right);
    left = right;
  }
  return total;
}

}  // namespace mfglq
