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


#include <cmath>
#include <vector>

#include "doctest.h"
#include "mfglq/datamat.hpp"
#include "mfglq/errors.hpp"
#include "mfglq/examples.hpp"
#include "mfglq/model.hpp"
#include "mfglq/simulate.hpp"
#include "oracles.hpp"

using namespace mfglq;

namespace {

Matrix gain(std::initializer_list<double> xs) {
  Matrix m(1, static_cast<Index>(xs.size()));
  Index j = 0;
  for (double x : xs) m(0, j++) = x;
  return m;
}

MeanTrajectory from_samples(const TimeGrid& g, const Matrix& x, const Matrix& v) {
  MeanTrajectory t;
  t.grid = g;
  t.X = x;
  t.V = v;
  return t;
}

MeanTrajectory example1_ode(double dt, std::size_t steps) {
  const SystemModel m = examples::example1();
  return integrate_mean_ode(
      m, Vector::Ones(2),
      {gain({35, 25}), ExplorationSignal::sinusoid_sum(100, 0.3, -1000, 1000, 7)},
      {0.0, dt, steps});
}

}  // namespace

TEST_SUITE("datamat") {

TEST_CASE("interval sets") {
  const IntervalSet s = IntervalSet::uniform(0.0, 0.1, 20);
  CHECK(s.d() == 20);
  CHECK(s.points().size() == 21);
  CHECK(s.points()[20] == doctest::Approx(2.0));
  CHECK_THROWS_AS(IntervalSet(std::vector<double>{0.0}), PreconditionError);
  CHECK_THROWS_AS(IntervalSet(std::vector<double>{0.0, 0.2, 0.1}), PreconditionError);
}

TEST_CASE("constant trajectory") {
  const TimeGrid g{0.0, 1e-3, 2000};
  const Vector c = (Vector(2) << 0.5, -2.0).finished();
  const auto traj = from_samples(g, c.replicate(1, 2001), Matrix::Zero(1, 2001));
  const DataMatrices dm = build_data_matrices(traj, IntervalSet::uniform(0.0, 0.1, 20), 0.0);
  CHECK(dm.rows() == 20);
  CHECK(dm.I.isZero());
  CHECK(dm.IXV.isZero());
  for (Index j = 0; j < 20; ++j) {
    CHECK((dm.IX.row(j).transpose() - 0.1 * kron(c, c)).norm() <= 1e-12);
  }
}

TEST_CASE("scalar exponential integral") {
  const TimeGrid g{0.0, 1e-4, 10000};
  Matrix x(1, 10001);
  for (Index k = 0; k <= 10000; ++k) x(0, k) = std::exp(-g.at(static_cast<std::size_t>(k)));
  const auto dm = build_data_matrices(from_samples(g, x, Matrix::Zero(1, 10001)),
                                      IntervalSet(std::vector<double>{0.0, 1.0}), 0.0);
  CHECK(std::abs(dm.IX(0, 0) - (1.0 - std::exp(-2.0)) / 2.0) <= 1e-6);
  CHECK(dm.IXhat(0, 0) == doctest::Approx(dm.IX(0, 0)).epsilon(1e-14));
  CHECK(dm.I(0, 0) == doctest::Approx(std::exp(-2.0) - 1.0));
}

TEST_CASE("range and shape errors") {
  const auto traj = example1_ode(1e-3, 1000);
  CHECK_THROWS_AS(build_data_matrices(traj, IntervalSet::uniform(0.0, 0.1, 20), 0.01),
                  RangeError);
  CHECK_THROWS_AS(build_data_matrices(traj, IntervalSet(std::vector<double>{0.0, 0.0001}), 0.01),
                  RangeError);
}

TEST_CASE("rank reports") {
  const auto traj = example1_ode(1e-4, 20000);
  const auto dm = build_data_matrices(traj, IntervalSet::uniform(0.0, 0.1, 20), 0.01);
  const RankReport pi = check_rank_pi(dm);
  CHECK(pi.required == 5);
  CHECK(pi.rank == 5);
  CHECK(pi.satisfied);

  const TimeGrid g{0.0, 1e-3, 2000};
  const auto zero = build_data_matrices(
      from_samples(g, Matrix::Zero(2, 2001), Matrix::Zero(1, 2001)),
      IntervalSet::uniform(0.0, 0.1, 20), 0.01);
  CHECK(check_rank_pi(zero).rank == 0);
  CHECK_FALSE(check_rank_pi(zero).satisfied);

  const SystemModel m2 = examples::example2();
  const auto open = integrate_mean_ode(m2, (Vector(3) << -1, 0, 1).finished(),
                                       {Matrix::Zero(1, 3), ExplorationSignal::single_sinusoid(1.0, -6.0)},
                                       {0.0, 1e-4, 20000});
  const RankReport vi = check_rank_vi(build_data_matrices(open, IntervalSet::uniform(0.0, 0.1, 20), 0.01));
  CHECK(vi.required == 9);
  CHECK(vi.satisfied);
  const RankReport few = check_rank_vi(build_data_matrices(open, IntervalSet::uniform(0.0, 0.1, 5), 0.01));
  CHECK(few.rank <= 5);
  CHECK_FALSE(few.satisfied);
}

TEST_CASE("property: phi rows telescope") {
  const auto traj = example1_ode(1e-4, 20000);
  oracle::Gen gen(301);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> s{0.0};
    while (s.back() < 1.8) s.push_back(s.back() + 0.01 * gen.integer(1, 20));
    const auto fine = build_data_matrices(traj, IntervalSet(s), 0.01);
    const auto whole = build_data_matrices(traj, IntervalSet(std::vector<double>{s.front(), s.back()}), 0.01);
    const Vector sum = fine.I.colwise().sum().transpose();
    CHECK((sum - whole.I.row(0).transpose()).norm() <= 1e-12 * (1.0 + whole.I.norm()));
  }
}

TEST_CASE("property: symmetric reduction IX vec(S) = IXhat vecs(S)") {
  const auto traj = example1_ode(1e-4, 20000);
  const auto dm = build_data_matrices(traj, IntervalSet::uniform(0.0, 0.1, 20), 0.01);
  oracle::Gen gen(302);
  for (int trial = 0; trial < 100; ++trial) {
    const SymMatrix s(gen.symmetric(2, 10.0));
    const Vector lhs = dm.IX * vec(s.matrix());
    const Vector rhs = dm.IXhat * vecs(s);
    for (Index j = 0; j < lhs.size(); ++j) {
      CHECK(std::abs(lhs(j) - rhs(j)) <= 1e-10 * (1.0 + std::abs(lhs(j))));
    }
  }
}

TEST_CASE("property: trapezoid error is second order") {
  // Smooth forcing only, so the coarse grid already resolves the integrand.
  const SystemModel m = examples::example1();
  const FeedbackPolicy pol{gain({35, 25}), ExplorationSignal::single_sinusoid(1.0, 3.0)};
  auto build = [&](double dt, std::size_t steps) {
    return build_data_matrices(integrate_mean_ode(m, Vector::Ones(2), pol, {0.0, dt, steps}),
                               IntervalSet::uniform(0.0, 0.1, 20), m.rho);
  };
  const auto a = build(4e-3, 500);
  const auto b = build(2e-3, 1000);
  const auto c = build(1e-3, 2000);
  for (const auto member : {&DataMatrices::IX, &DataMatrices::IXV, &DataMatrices::IXhat}) {
    const double ratio = (a.*member - b.*member).norm() / (b.*member - c.*member).norm();
    CHECK(ratio >= 2.0);
    CHECK(ratio <= 8.0);
  }
}

TEST_CASE("exact data satisfies the policy-evaluation identity row by row") {
  // d/dt e^{-rho t} X'PX integrated over each interval, written out with the
  // model known: P solves the evaluation Lyapunov equation for gain K and L = B'P.
  const SystemModel m = examples::example1();
  const TimeGrid g{0.0, 1e-5, 200000};
  const auto traj = example1_ode(g.dt, g.steps);
  const IntervalSet iv = IntervalSet::uniform(0.0, 0.1, 20);
  const auto dm = build_data_matrices(traj, iv, m.rho);
  const PiResult pi = model_pi(m, gain({35, 25}), gain({35, 25}));

  Matrix k_prev = gain({35, 25});
  for (const auto& rec : pi.history.records) {
    const Matrix p = rec.P.matrix();
    const Matrix l = m.B.transpose() * p;
    const Matrix w = k_prev.transpose() * l + l.transpose() * k_prev -
                     k_prev.transpose() * m.R.matrix() * k_prev - m.Q.matrix();
    std::vector<double> f(g.points());
    for (std::size_t k = 0; k < g.points(); ++k) {
      const Vector x = traj.X.col(static_cast<Index>(k));
      const Vector v = traj.V.col(static_cast<Index>(k));
      f[k] = std::exp(-m.rho * g.at(k)) * (x.dot(w * x) + 2.0 * x.dot(l.transpose() * v));
    }
    for (std::size_t j = 0; j < iv.d(); ++j) {
      const std::size_t i0 = g.nearest_index(iv.points()[j]);
      const std::size_t i1 = g.nearest_index(iv.points()[j + 1]);
      const double lhs = dm.I.row(static_cast<Index>(j)).dot(vecs(rec.P));
      const double rhs = oracle::trapezoid(f, i0, i1, g.dt);
      CHECK(std::abs(lhs - rhs) <= 1e-6 * std::abs(lhs) + 1e-9);
    }
    k_prev = rec.K;
  }
}

}  // TEST_SUITE
