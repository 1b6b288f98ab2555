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

#include "doctest.h"
#include "mfglq/errors.hpp"
#include "mfglq/examples.hpp"
#include "mfglq/model.hpp"
#include "oracles.hpp"

using namespace mfglq;

namespace {

SystemModel scalar(double a, double b, double q, double r, double rho) {
  SystemModel m;
  m.A = Matrix::Constant(1, 1, a);
  m.B = Matrix::Constant(1, 1, b);
  m.C = Matrix::Zero(1, 1);
  m.Q = SymMatrix(Matrix::Constant(1, 1, q));
  m.R = SymMatrix(Matrix::Constant(1, 1, r));
  m.rho = rho;
  return m;
}

Matrix row(std::initializer_list<double> xs) {
  Matrix m(1, static_cast<Index>(xs.size()));
  Index j = 0;
  for (double x : xs) m(0, j++) = x;
  return m;
}

}  // namespace

TEST_SUITE("model") {

TEST_CASE("model validation") {
  SystemModel m = examples::example1();
  CHECK_NOTHROW(m.validate());
  m.rho = -1.0;
  CHECK_THROWS_AS(m.validate(), PreconditionError);
  m = examples::example1();
  m.B = Matrix::Zero(3, 1);
  CHECK_THROWS_AS(m.validate(), DimensionError);
  m = examples::example1();
  m.Q = SymMatrix(Matrix::Zero(2, 2));
  CHECK_THROWS_AS(m.validate(), PreconditionError);
}

TEST_CASE("assumption 1") {
  const auto r1 = validate_assumption1(examples::example1());
  CHECK(r1.spectrum_ok);
  CHECK(r1.stabilizable);

  SystemModel m = examples::example1();
  m.A << m.rho, 0, 0, -1;
  CHECK_FALSE(validate_assumption1(m).spectrum_ok);

  m.A = Matrix::Identity(2, 2);
  m.B = Matrix(2, 1);
  m.B << 1, 0;
  CHECK_FALSE(validate_assumption1(m).stabilizable);
}

TEST_CASE("assumption 2") {
  CHECK(validate_assumption2(examples::example2()));
  CHECK_FALSE(validate_assumption2(examples::example1()));
  SystemModel m = examples::example1();
  m.A = -Matrix::Identity(2, 2);
  CHECK(validate_assumption2(m));
}

TEST_CASE("model_pi reproduces the first example's solution") {
  const SystemModel m = examples::example1();
  const PiResult r = model_pi(m, row({35, 25}), row({35, 25}), {1e-9, 100});
  const Matrix p_ref = oracle::riccati(m.A, m.B, m.Q.matrix(), m.R.matrix(), m.rho);
  const Matrix y_ref = oracle::riccati(m.A, m.B, Matrix::Zero(2, 2), m.R.matrix(), m.rho);
  CHECK(relative_error(r.solution.P.matrix(), p_ref) < 1e-9);
  CHECK(relative_error(r.solution.Y.matrix(), y_ref) < 1e-9);
  CHECK(r.gains.K(0, 0) == doctest::Approx(59.3007).epsilon(1e-5));
  CHECK(r.gains.K(0, 1) == doctest::Approx(34.5712).epsilon(1e-5));
  CHECK(r.gains.K_Y(0, 0) == doctest::Approx(56.5767).epsilon(1e-5));
  CHECK(r.gains.K_Y(0, 1) == doctest::Approx(33.9800).epsilon(1e-5));

  const auto [rp, ry] = are_residual(m, r.solution);
  CHECK(rp <= 1e-6 * m.Q.matrix().norm());
  CHECK(ry <= 1e-6 * m.Q.matrix().norm());

  for (const auto& rec : r.history.records) {
    const Matrix shift = m.A - 0.5 * m.rho * Matrix::Identity(2, 2);
    CHECK(is_hurwitz(shift - m.B * rec.K));
    CHECK(is_hurwitz(shift - m.B * rec.K_Y));
  }
}

TEST_CASE("model_pi on the second example; Y vanishes when started at zero") {
  const SystemModel m = examples::example2();
  const PiResult r = model_pi(m, row({-1, -1, 14}), Matrix::Zero(1, 3), {1e-9, 100});
  CHECK(r.gains.K(0, 0) == doctest::Approx(0.1758).epsilon(1e-3));
  CHECK(r.gains.K(0, 1) == doctest::Approx(-0.9008).epsilon(1e-3));
  CHECK(r.gains.K(0, 2) == doctest::Approx(13.1881).epsilon(1e-3));
  CHECK(r.solution.Y.matrix().norm() <= 1e-12);
  CHECK(r.gains.K_Y.norm() <= 1e-12);
  const auto [rp, ry] = are_residual(m, r.solution);
  CHECK(rp <= 1e-6 * m.Q.matrix().norm());
  CHECK(ry == 0.0);
}

TEST_CASE("model_pi scalar case and iteration counts") {
  const PiResult r = model_pi(scalar(0, 1, 1, 1, 0), row({1.5}), row({1.5}), {1e-12, 100});
  CHECK(r.solution.P.matrix()(0, 0) == doctest::Approx(1.0));
  CHECK(r.gains.K(0, 0) == doctest::Approx(1.0));

  CHECK(model_pi(examples::example1(), row({35, 25}), row({35, 25})).iterations == 6);
  CHECK(model_pi(examples::example2(), row({-1, -1, 14}), Matrix::Zero(1, 3)).iterations == 4);
}

TEST_CASE("model_pi errors") {
  const SystemModel m = examples::example1();
  CHECK_THROWS_AS(model_pi(m, row({0, 0}), row({35, 25})), InitializationError);
  CHECK_THROWS_AS(model_pi(m, row({35, 25}), row({0, 0})), InitializationError);
  CHECK_THROWS_AS(model_pi(m, row({35}), row({35, 25})), DimensionError);
  try {
    model_pi(m, row({35, 25}), row({35, 25}), {1e-14, 2});
    FAIL("expected non-convergence");
  } catch (const NonConvergence<PiHistory>& e) {
    CHECK(e.history().records.size() == 2);
  }
}

TEST_CASE("model_vi") {
  const SystemModel m = examples::example2();
  const Matrix k_ref = model_pi(m, row({-1, -1, 14}), Matrix::Zero(1, 3), {1e-12, 100}).gains.K;
  const ViResult r = model_vi(m, SymMatrix(Matrix(0.1 * Matrix::Identity(3, 3))));
  CHECK(relative_error(r.K, k_ref) <= 1e-2);
  CHECK(r.K_Y.isZero());

  // scalar a = -1, b = q = r = 1, rho = 0: p^2 + 2p - 1 = 0
  const ViResult s = model_vi(scalar(-1, 1, 1, 1, 0), SymMatrix::identity(1), {}, {}, {1e-8, 100000});
  CHECK(s.P.matrix()(0, 0) == doctest::Approx(std::sqrt(2.0) - 1.0).epsilon(1e-6));

  CHECK_THROWS_AS(model_vi(examples::example1(), SymMatrix::identity(2)), PreconditionError);
  CHECK_THROWS_AS(model_vi(m, SymMatrix(Matrix::Zero(3, 3))), PreconditionError);
}

TEST_CASE("model_vi stops at once from the fixed point") {
  const SystemModel m = examples::example2();
  const RiccatiPair exact = model_pi(m, row({-1, -1, 14}), Matrix::Zero(1, 3), {1e-13, 100}).solution;
  const ViResult r = model_vi(m, exact.P, {}, {}, {1e-6, 10});
  CHECK(r.iterations == 0);
  CHECK(r.resets == 0);
}

TEST_CASE("model_vi history invariants") {
  const SystemModel m = examples::example2();
  const BoundSchedule bounds;
  const StepSchedule gamma;
  const ViResult r = model_vi(m, SymMatrix(Matrix(0.1 * Matrix::Identity(3, 3))), gamma, bounds);
  const auto& recs = r.history.records;
  REQUIRE(recs.size() >= 2);
  for (std::size_t i = 0; i + 1 < recs.size(); ++i) {
    CHECK(recs[i].ratio >= 1e-3);
    CHECK(recs[i].gamma == gamma.gamma(recs[i].k));
    if (recs[i].reset) {
      CHECK(recs[i + 1].P.matrix() == recs[0].P.matrix());
      CHECK(recs[i + 1].q == recs[i].q + 1);
    } else {
      CHECK(recs[i + 1].q == recs[i].q);
      CHECK(norm2(recs[i + 1].P.matrix()) <= bounds.radius(recs[i + 1].q));
    }
  }
  CHECK(recs.back().ratio < 1e-3);
  CHECK(recs.back().k == r.iterations);
}

TEST_CASE("decentralized gains") {
  const SystemModel m = scalar(0, 2, 1, 4, 0.1);
  RiccatiPair pair{SymMatrix(Matrix::Constant(1, 1, 2.0)), SymMatrix(1)};
  const GainPair g = decentralized_gains(pair, m);
  CHECK(g.K(0, 0) == doctest::Approx(1.0));
  CHECK(g.K_Y(0, 0) == 0.0);

  const SystemModel e1 = examples::example1();
  const GainPair z = decentralized_gains({SymMatrix(2), SymMatrix(2)}, e1);
  CHECK(z.K.isZero());
  CHECK(z.K_Y.isZero());
  CHECK(are_residual(e1, {SymMatrix(2), SymMatrix(2)}).first ==
        doctest::Approx(e1.Q.matrix().norm()));
}

TEST_CASE("property: schedule partial sums") {
  const StepSchedule gamma;
  double sum = 0.0, sq = 0.0;
  for (int k = 0; k < 1000000; ++k) {
    const double g = gamma.gamma(k);
    REQUIRE(g > 0.0);
    sum += g;
    sq += g * g;
    if (k > 0 && (k & (k - 1)) == 0) {
      CHECK(sum >= gamma.c * std::log(static_cast<double>(k)));
    }
  }
  // c^2 pi^2 / 6 bounds the squares
  CHECK(sq <= gamma.c * gamma.c * 1.6449340668482264);
}

TEST_CASE("bound schedule membership") {
  const BoundSchedule b;
  CHECK(b.radius(0) == 100.0);
  CHECK(b.radius(2) == 300.0);
  CHECK(b.contains(Matrix::Identity(2, 2), 0));
  CHECK_FALSE(b.contains(150.0 * Matrix::Identity(2, 2), 0));
  CHECK(b.contains(150.0 * Matrix::Identity(2, 2), 1));
  Matrix indefinite(2, 2);
  indefinite << 1, 0, 0, -1;
  CHECK_FALSE(b.contains(indefinite, 5));
}

}  // TEST_SUITE
