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

// Acceptance suite: one PASS/FAIL line per criterion, exit status 0 only when
// every criterion passes. Set MFGLQ_ACCEPTANCE_FULL=1 to add the M = 1e6
// Example 1 run to criterion 5.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "mfglq/datamat.hpp"
#include "mfglq/errors.hpp"
#include "mfglq/examples.hpp"
#include "mfglq/learn_pi.hpp"
#include "mfglq/learn_vi.hpp"
#include "mfglq/linalg.hpp"
#include "mfglq/model.hpp"
#include "mfglq/simulate.hpp"
#include "mfglq_cli/app.hpp"
#include "mfglq_cli/config.hpp"
#include "mfglq_cli/pipeline.hpp"
#include "oracles.hpp"

using namespace mfglq;

namespace {

// Tolerances and limits, fixed here rather than read from anywhere.
constexpr double kTruthEntryTol = 1e-3;
constexpr double kTruthSeconds = 1.0;
constexpr double kOracleTol = 1e-6;
constexpr double kLearnedTol = 0.02;
constexpr double kExample1Seconds = 300.0;
constexpr double kExample2ViSeconds = 600.0;
constexpr double kFullFactor = 5.0;
constexpr double kGapTol = 0.15;
constexpr double kQuadFormTol = 1e-12;
constexpr double kKronTol = 1e-10;
constexpr double kLyapunovTol = 1e-8;
constexpr double kReductionTol = 1e-10;
constexpr double kTelescopeTol = 1e-12;
constexpr double kScalingFactor = 2.0;

// Reported values for Example 1 at M = 1e6.
constexpr double kPublishedKError = 0.0012;
constexpr double kPublishedKyError = 0.0042;

const TimeGrid kExactGrid{0.0, 1e-5, 200000};
const IntervalSet kIntervals = IntervalSet::uniform(0.0, 0.1, 20);

struct Verdict {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void report(int id, const std::string& title, const Verdict& v) {
  if (!v.pass) ++failures;
  std::printf("%s criterion %2d  %s: %s\n", v.pass ? "PASS" : "FAIL", id,
              title.c_str(), v.detail.c_str());
  std::fflush(stdout);
}

Verdict guarded(const std::function<Verdict()>& body) {
  try {
    return body();
  } catch (const std::exception& e) {
    return {false, std::string("threw: ") + e.what()};
  }
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Matrix row(std::initializer_list<double> v) {
  Matrix m(1, static_cast<Index>(v.size()));
  Index j = 0;
  for (double x : v) m(0, j++) = x;
  return m;
}

// Largest entrywise |a - b| / |b|.
double worst_entry(const Matrix& a, const Matrix& b) {
  double worst = 0.0;
  for (Index i = 0; i < b.rows(); ++i)
    for (Index j = 0; j < b.cols(); ++j)
      worst = std::max(worst, std::abs(a(i, j) - b(i, j)) / std::abs(b(i, j)));
  return worst;
}

// ---------------------------------------------------------------- 1, 2

Verdict truth_example1() {
  const SystemModel m = examples::example1();
  const auto t0 = std::chrono::steady_clock::now();
  const PiResult r = model_pi(m, row({35, 25}), row({35, 25}), {1e-10, 100});
  const double secs = seconds_since(t0);
  Matrix p(2, 2), y(2, 2);
  p << 232.2887, 59.3007, 59.3007, 34.5712;
  y << 207.1460, 56.5767, 56.5767, 33.9800;
  const double worst = std::max(
      {worst_entry(r.solution.P.matrix(), p), worst_entry(r.gains.K, row({59.3007, 34.5712})),
       worst_entry(r.solution.Y.matrix(), y), worst_entry(r.gains.K_Y, row({56.5767, 33.9800}))});
  // Independent cross-check of the same fixed points.
  const double hamiltonian = std::max(
      relative_error(r.solution.P.matrix(), oracle::riccati(m.A, m.B, m.Q.matrix(), m.R.matrix(), m.rho)),
      relative_error(r.solution.Y.matrix(),
                     oracle::riccati(m.A, m.B, Matrix::Zero(2, 2), m.R.matrix(), m.rho)));
  return {worst <= kTruthEntryTol && secs < kTruthSeconds && hamiltonian <= 1e-8,
          fmt::format("worst entry error {:.2e} (tol {:.0e}), stable-subspace check {:.1e}, {:.3f} s",
                      worst, kTruthEntryTol, hamiltonian, secs)};
}

Verdict truth_example2() {
  const SystemModel m = examples::example2();
  const auto t0 = std::chrono::steady_clock::now();
  const PiResult r = model_pi(m, row({-1, -1, 14}), Matrix::Zero(1, 3), {1e-10, 100});
  const double secs = seconds_since(t0);
  Matrix p(3, 3);
  p << 0.4976, 0.1185, -1.3229, 0.1185, 0.3377, -2.5877, -1.3229, -2.5877, 36.5204;
  const double worst = std::max(worst_entry(r.solution.P.matrix(), p),
                                worst_entry(r.gains.K, row({0.1758, -0.9008, 13.1881})));
  const double hamiltonian = relative_error(
      r.solution.P.matrix(), oracle::riccati(m.A, m.B, m.Q.matrix(), m.R.matrix(), m.rho));
  return {worst <= kTruthEntryTol && secs < kTruthSeconds && hamiltonian <= 1e-8,
          fmt::format("worst entry error {:.2e} (tol {:.0e}), stable-subspace check {:.1e}, {:.3f} s",
                      worst, kTruthEntryTol, hamiltonian, secs)};
}

// ---------------------------------------------------------------- 3, 4

DataMatrices exact_data(const SystemModel& m, const Vector& x0, const FeedbackPolicy& pol) {
  return build_data_matrices(integrate_mean_ode(m, x0, pol, kExactGrid), kIntervals, m.rho);
}

// Worst per-iterate relative error between two PI histories; infinity when
// the lengths differ.
double pi_sequence_gap(const PiHistory& a, const PiHistory& b) {
  if (a.records.size() != b.records.size()) return INFINITY;
  double worst = 0.0;
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    const PiRecord& x = a.records[i];
    const PiRecord& y = b.records[i];
    worst = std::max({worst, relative_error(x.P.matrix(), y.P.matrix()),
                      relative_error(x.K, y.K), relative_error(x.Y.matrix(), y.Y.matrix()),
                      relative_error(x.K_Y, y.K_Y)});
  }
  return worst;
}

Verdict oracle_pi() {
  const SystemModel e1 = examples::example1();
  const Matrix k1 = row({35, 25});
  const DataMatrices d1 = exact_data(
      e1, Vector::Ones(2), {k1, ExplorationSignal::sinusoid_sum(100, 0.3, -1000, 1000, 7)});
  const PiResult m1 = model_pi(e1, k1, k1);
  const PiResult r1 = run_data_pi(d1, k1, k1, e1.R, e1.Q);

  const SystemModel e2 = examples::example2();
  const Matrix k2 = row({-1, -1, 14});
  const Matrix ky2 = Matrix::Zero(1, 3);
  const DataMatrices d2 = exact_data(e2, (Vector(3) << -1, 0, 1).finished(),
                                     {k2, ExplorationSignal::single_sinusoid(1.0, -24.6)});
  const PiResult m2 = model_pi(e2, k2, ky2);
  const PiResult r2 = run_data_pi(d2, k2, ky2, e2.R, e2.Q);

  const double g1 = pi_sequence_gap(r1.history, m1.history);
  const double g2 = pi_sequence_gap(r2.history, m2.history);
  return {g1 <= kOracleTol && g2 <= kOracleTol,
          fmt::format("example1 {} iterates, worst {:.2e}; example2 {} iterates, worst {:.2e} (tol {:.0e})",
                      r1.history.records.size(), g1, r2.history.records.size(), g2, kOracleTol)};
}

Verdict oracle_vi() {
  const SystemModel m = examples::example2();
  const DataMatrices d = exact_data(m, (Vector(3) << -1, 0, 1).finished(),
                                    {Matrix::Zero(1, 3), ExplorationSignal::single_sinusoid(1.0, -6.0)});
  const SymMatrix p0(Matrix(0.1 * Matrix::Identity(3, 3)));
  const ViResult model = model_vi(m, p0);
  const ViResult data = run_data_vi(d, p0, {}, {}, m.Q, m.R);
  const auto& a = data.history.records;
  const auto& b = model.history.records;
  double worst = a.size() == b.size() ? 0.0 : INFINITY;
  bool flags = a.size() == b.size();
  for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) {
    worst = std::max({worst, relative_error(a[i].P.matrix(), b[i].P.matrix()),
                      relative_error(a[i].K, b[i].K)});
    flags = flags && a[i].reset == b[i].reset && a[i].q == b[i].q;
  }
  return {worst <= kOracleTol && flags,
          fmt::format("{} steps ({} model), {} resets, worst {:.2e} (tol {:.0e}), reset pattern {}",
                      a.size(), b.size(), data.resets, worst, kOracleTol,
                      flags ? "identical" : "differs")};
}

// ---------------------------------------------------------------- 10

struct PropertyTally {
  int checks = 0;
  std::vector<std::string> failed;
  void expect(bool ok, const std::string& name) {
    ++checks;
    if (!ok && (failed.empty() || failed.back() != name)) failed.push_back(name);
  }
};

Verdict properties() {
  PropertyTally t;
  oracle::Gen gen(1001);

  for (int trial = 0; trial < 200; ++trial) {
    const Index n = gen.integer(1, 6);
    const SymMatrix s(gen.symmetric(n, 5.0));
    t.expect(unvecs(vecs(s), n).matrix() == s.matrix(), "vecs roundtrip");
    const Vector x = gen.matrix(n, 1, 3.0);
    const double quad = x.dot(s.matrix() * x);
    t.expect(std::abs(bar(x).dot(vecs(s)) - quad) <=
                 kQuadFormTol * (1.0 + x.squaredNorm() * s.matrix().norm()),
             "bar quadratic form");
  }

  for (int trial = 0; trial < 100; ++trial) {
    const Index r1 = gen.integer(1, 3), c1 = gen.integer(1, 3), r2 = gen.integer(1, 3),
                c2 = gen.integer(1, 3), c3 = gen.integer(1, 3), c4 = gen.integer(1, 3);
    const Matrix a = gen.matrix(r1, c1), b = gen.matrix(r2, c2);
    const Matrix c = gen.matrix(c1, c3), d = gen.matrix(c2, c4);
    const Matrix lhs = kron(a, b) * kron(c, d);
    const Matrix rhs = kron(a * c, b * d);
    t.expect((lhs - rhs).norm() <= kKronTol * (1.0 + rhs.norm()), "kronecker mixed product");
  }

  for (int trial = 0; trial < 100; ++trial) {
    const Index n = gen.integer(1, 5);
    const Matrix f = gen.stable(n, 0.3);
    const Matrix g = gen.matrix(n, n);
    const SymMatrix w(Matrix(g * g.transpose() + Matrix::Identity(n, n)));
    const Matrix p = solve_lyapunov(f, w).matrix();
    const Matrix res = f.transpose() * p + p * f + w.matrix();
    t.expect(res.norm() <= kLyapunovTol * (1.0 + w.matrix().norm() + p.norm()),
             "lyapunov residual");
  }

  const SystemModel e1 = examples::example1();
  const MeanTrajectory traj = integrate_mean_ode(
      e1, Vector::Ones(2), {row({35, 25}), ExplorationSignal::sinusoid_sum(100, 0.3, -1000, 1000, 7)},
      {0.0, 1e-4, 20000});
  const DataMatrices dm = build_data_matrices(traj, kIntervals, e1.rho);
  for (int trial = 0; trial < 100; ++trial) {
    const SymMatrix s(gen.symmetric(2, 10.0));
    const Vector lhs = dm.IX * vec(s.matrix());
    const Vector rhs = dm.IXhat * vecs(s);
    for (Index j = 0; j < lhs.size(); ++j) {
      t.expect(std::abs(lhs(j) - rhs(j)) <= kReductionTol * (1.0 + std::abs(lhs(j))),
               "symmetry reduction");
    }
  }
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> s{0.01 * gen.integer(0, 10)};
    while (s.back() < 1.8) s.push_back(s.back() + 0.01 * gen.integer(1, 20));
    const DataMatrices fine = build_data_matrices(traj, IntervalSet(s), e1.rho);
    const DataMatrices whole =
        build_data_matrices(traj, IntervalSet(std::vector<double>{s.front(), s.back()}), e1.rho);
    const Vector sum = fine.I.colwise().sum().transpose();
    t.expect((sum - whole.I.row(0).transpose()).norm() <= kTelescopeTol * (1.0 + whole.I.norm()),
             "phi telescoping");
  }

  // Sampling error against the noise-free Euler recursion over one decade of M.
  SystemModel quiet = e1;
  quiet.C.setZero();
  const TimeGrid g{0.0, 1e-3, 2000};
  const FeedbackPolicy pol{row({35, 25}), ExplorationSignal::sinusoid_sum(100, 0.3, -1000, 1000, 7)};
  const InitialLaw x0 = InitialLaw::point(Vector::Ones(2));
  const Matrix ref = monte_carlo_mean(quiet, x0, pol, g, {1, 1, 1}).X;
  auto rms = [&](std::size_t samples) {
    double acc = 0.0;
    for (std::uint64_t seed = 1; seed <= 4; ++seed) {
      acc += (monte_carlo_mean(e1, x0, pol, g, {samples, seed, 1}).X - ref).squaredNorm();
    }
    return std::sqrt(acc);
  };
  const double ratio = rms(1000) / rms(10000);
  t.expect(ratio >= std::sqrt(10.0) / kScalingFactor && ratio <= std::sqrt(10.0) * kScalingFactor,
           "monte-carlo sqrt(M) scaling");

  std::string detail = fmt::format("{} checks, error ratio M=1e3/1e4 {:.2f} (ideal {:.2f})",
                                   t.checks, ratio, std::sqrt(10.0));
  for (const auto& name : t.failed) detail += "; failed: " + name;
  return {t.failed.empty(), detail};
}

bool full_run_requested() {
  const char* v = std::getenv("MFGLQ_ACCEPTANCE_FULL");
  return v != nullptr && std::string(v) == "1";
}

}  // namespace

int main() {
  ::setenv("MFG_LOG", "error", 0);
  cli::configure_logging();
  using cli::builtin_config;

  report(1, "model PI reproduces the Example 1 ground truth", guarded(truth_example1));
  report(2, "model PI reproduces the Example 2 ground truth", guarded(truth_example2));
  report(3, "data PI on exact data follows model PI iterate by iterate", guarded(oracle_pi));
  report(4, "data VI on exact data follows model VI step by step", guarded(oracle_vi));

  // 5 and 9 share the Example 1 run; 8 reuses the data of 5 and 7.
  std::optional<RankReport> rank_pi;
  std::optional<RankReport> rank_vi;
  std::optional<double> gap;
  report(5, "Example 1 desk-scale reproduction", guarded([&]() -> Verdict {
           const cli::RunConfig cfg = builtin_config("example1");
           const auto t0 = std::chrono::steady_clock::now();
           const cli::ReproReport r = cli::repro(cfg, "example1");
           const double secs = seconds_since(t0);
           rank_pi = r.collected.rank;
           if (r.population) gap = r.population->gap;
           const auto& ref = *r.learned.reference;
           const double ky = ref.ky_error.value_or(INFINITY);
           const int it = r.learned.iterations;
           bool ok = it >= 4 && it <= 8 && ref.k_error <= kLearnedTol && ky <= kLearnedTol &&
                     secs < kExample1Seconds;
           std::string detail = fmt::format(
               "M = {}: {} iterations, errors K {:.4f}, K_Y {:.4f} (tol {}), {:.0f} s",
               cfg.trajectory.mc.samples, it, ref.k_error, ky, kLearnedTol, secs);
           if (full_run_requested()) {
             cli::RunConfig big = cfg;
             big.trajectory.mc.samples = 1000000;
             const cli::LearnResult l = cli::learn(big, cli::collect(big).data);
             const double bk = l.reference->k_error;
             const double bky = l.reference->ky_error.value_or(INFINITY);
             ok = ok && bk <= kFullFactor * kPublishedKError && bky <= kFullFactor * kPublishedKyError;
             detail += fmt::format("; M = 1e6: errors K {:.4f}, K_Y {:.4f} (limits {:.4f}, {:.4f})",
                                   bk, bky, kFullFactor * kPublishedKError, kFullFactor * kPublishedKyError);
           } else {
             detail += "; M = 1e6 check skipped (set MFGLQ_ACCEPTANCE_FULL=1)";
           }
           return {ok, detail};
         }));

  report(6, "Example 2 data PI at M = 1e6", guarded([&]() -> Verdict {
           const cli::RunConfig cfg = builtin_config("example2-pi");
           const auto t0 = std::chrono::steady_clock::now();
           const cli::ReproReport r = cli::repro(cfg, "example2-pi");
           const double secs = seconds_since(t0);
           const int it = r.learned.iterations;
           const double err = r.learned.reference->k_error;
           return {it >= 2 && it <= 6 && err <= kLearnedTol,
                   fmt::format("M = {}: {} iterations, error K {:.4f} (tol {}), {:.0f} s",
                               cfg.trajectory.mc.samples, it, err, kLearnedTol, secs)};
         }));

  report(7, "Example 2 data VI at M = 2e5", guarded([&]() -> Verdict {
           const cli::RunConfig cfg = builtin_config("example2-vi");
           const auto t0 = std::chrono::steady_clock::now();
           const cli::CollectResult c = cli::collect(cfg);
           rank_vi = c.rank;
           try {
             const cli::LearnResult l = cli::learn(cfg, c.data);
             const double secs = seconds_since(t0);
             const double err = l.reference->k_error;
             const int it = l.iterations;
             return {err <= kLearnedTol && it >= 86 && it <= 344 && secs < kExample2ViSeconds,
                     fmt::format("M = {}: {} iterations, {} resets, error K {:.4f} (tol {}), {:.0f} s",
                                 cfg.trajectory.mc.samples, it, l.resets, err, kLearnedTol, secs)};
           } catch (const NonConvergence<ViHistory>& e) {
             int resets = 0;
             for (const auto& rec : e.history().records) resets += rec.reset ? 1 : 0;
             return {false, fmt::format("M = {}: no convergence within {} iterations ({} resets), {:.0f} s",
                                        cfg.trajectory.mc.samples, e.iterations(), resets,
                                        seconds_since(t0))};
           }
         }));

  report(8, "rank conditions on the default data", [&]() -> Verdict {
    if (!rank_pi || !rank_vi) return {false, "default data unavailable (criterion 5 or 7 aborted)"};
    const bool ok = rank_pi->satisfied && rank_pi->rank == 5 && rank_pi->required == 5 &&
                    rank_vi->satisfied && rank_vi->rank == 9 && rank_vi->required == 9;
    return {ok, fmt::format("pi {}/{}, vi {}/{}", rank_pi->rank, rank_pi->required,
                            rank_vi->rank, rank_vi->required)};
  }());

  report(9, "200-agent population tracks the aggregate", [&]() -> Verdict {
    if (!gap) return {false, "population run unavailable (criterion 5 aborted)"};
    return {*gap <= kGapTol, fmt::format("relative sup gap {:.4f} (tol {})", *gap, kGapTol)};
  }());

  report(10, "property suites with fixed seeds", guarded(properties));

  std::printf("%d of 10 criteria passed\n", 10 - failures);
  return failures == 0 ? 0 : 1;
}
