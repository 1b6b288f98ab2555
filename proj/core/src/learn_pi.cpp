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

#include "mfglq/learn_pi.hpp"

#include <string>
#include <utility>

#include "iteration.hpp"
#include "mfglq/errors.hpp"

namespace mfglq {

namespace {

void require_shapes(const DataMatrices& dm, const Matrix& K,
                    const SymMatrix& Q, const SymMatrix& R) {
  dm.validate();
  if (K.rows() != dm.m || K.cols() != dm.n) {
    throw DimensionError("gain is " + std::to_string(K.rows()) + "x" +
                         std::to_string(K.cols()) + ", data expects " +
                         std::to_string(dm.m) + "x" + std::to_string(dm.n));
  }
  if (Q.dim() != dm.n || R.dim() != dm.m) {
    throw DimensionError("Q/R do not match the data dimensions");
  }
}

}  // namespace

PiStep pi_step(const DataMatrices& dm, const Matrix& K_prev, const SymMatrix& Q,
               const SymMatrix& R) {
  require_shapes(dm, K_prev, Q, R);
  const Index n = dm.n;
  const Index m = dm.m;
  const Index d = dm.I.rows();
  const Index head = sym_size(n);

  const Matrix eye = Matrix::Identity(n, n);
  Matrix delta(d, head + m * n);
  delta.leftCols(head) = dm.I;
  delta.rightCols(m * n) =
      -2.0 * dm.IX * kron(eye, K_prev.transpose()) - 2.0 * dm.IXV;
  const Matrix cost = -K_prev.transpose() * R.matrix() * K_prev - Q.matrix();
  const Vector theta = dm.IX * vec(cost);

  Vector sol;
  try {
    sol = solve_lstsq(delta, theta);
  } catch (const RankDeficientError& e) {
    throw RankDeficientError(
        std::string("pi_step: ") + e.what() +
            "; use a richer exploration signal or more intervals",
        e.rank(), e.required());
  }
  return PiStep{unvecs(sol.head(head), n), unvec(sol.tail(m * n), m, n)};
}

PiResult run_data_pi(const DataMatrices& dm, const Matrix& K0,
                     const Matrix& K0_Y, const SymMatrix& R,
                     const SymMatrix& Q, const PiOptions& opts) {
  require_shapes(dm, K0, Q, R);
  require_shapes(dm, K0_Y, Q, R);
  const SymMatrix zero = SymMatrix::zero(dm.n);
  auto evaluate = [&](const Matrix& k_prev, bool include_q) {
    PiStep step = pi_step(dm, k_prev, include_q ? Q : zero, R);
    return std::pair{std::move(step.P), std::move(step.L)};
  };
  return detail::run_pi_loop(K0, K0_Y, R, opts, evaluate);
}

}  // namespace mfglq
