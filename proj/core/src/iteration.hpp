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

// Iteration skeletons shared by the model-based solvers and the data-driven
// learners. Both variants differ only in how one evaluation step is computed,
// so driving them through the same loop keeps the stopping logic identical.

#ifndef MFGLQ_SRC_ITERATION_HPP_
#define MFGLQ_SRC_ITERATION_HPP_

#include <string>
#include <utility>

#include <Eigen/Cholesky>

#include "mfglq/errors.hpp"
#include "mfglq/linalg.hpp"
#include "mfglq/model.hpp"

namespace mfglq::detail {

inline Matrix solve_r(const SymMatrix& r, const Matrix& rhs) {
  Eigen::LLT<Matrix> llt(r.matrix());
  if (llt.info() != Eigen::Success) {
    throw PreconditionError("R is not positive definite");
  }
  return llt.solve(rhs);
}

// evaluate(K_prev, include_q) -> (P, L) with L standing in for B'P.
template <typename Evaluate>
PiResult run_pi_loop(const Matrix& K0, const Matrix& K0_Y, const SymMatrix& R,
                     const PiOptions& opts, Evaluate&& evaluate) {
  PiResult result;
  Matrix K = K0;
  Matrix K_Y = K0_Y;
  for (int k = 1; k <= opts.max_iter; ++k) {
    auto [P, L] = evaluate(K, true);
    auto [Y, L_Y] = evaluate(K_Y, false);
    Matrix K_next = solve_r(R, L);
    Matrix K_Y_next = solve_r(R, L_Y);

    PiRecord rec;
    rec.k = k;
    rec.k_step = norm2(K_next - K);
    rec.ky_step = norm2(K_Y_next - K_Y);
    rec.P = P;
    rec.Y = Y;
    rec.K = K_next;
    rec.K_Y = K_Y_next;
    result.history.records.push_back(rec);

    K = std::move(K_next);
    K_Y = std::move(K_Y_next);
    if (rec.k_step < opts.eps && rec.ky_step < opts.eps) {
      result.solution = RiccatiPair{std::move(P), std::move(Y)};
      result.gains = GainPair{std::move(K), std::move(K_Y)};
      result.iterations = k;
      return result;
    }
  }
  throw NonConvergence<PiHistory>(
      "policy iteration did not converge within " +
          std::to_string(opts.max_iter) + " iterations",
      opts.max_iter, std::move(result.history));
}

// evaluate(P) -> (M, N) with M standing in for -rho P + A'P + PA and N for
// B'P.
template <typename Evaluate>
ViResult run_vi_loop(const SymMatrix& P0, const SymMatrix& Q,
                     const SymMatrix& R, const StepSchedule& gamma,
                     const BoundSchedule& bounds, const ViOptions& opts,
                     Evaluate&& evaluate) {
  ViResult result;
  SymMatrix P = P0;
  int q = 0;
  for (int k = 0; k < opts.max_iter; ++k) {
    auto [M, N] = evaluate(P);
    Matrix K = solve_r(R, N);
    const double g = gamma.gamma(k);
    const Matrix increment =
        M.matrix() - K.transpose() * R.matrix() * K + Q.matrix();
    const Matrix P_tilde = P.matrix() + g * increment;

    ViRecord rec;
    rec.k = k;
    rec.q = q;
    rec.gamma = g;
    rec.ratio = norm2(P_tilde - P.matrix()) / g;
    rec.P = P;
    rec.K = K;

    if (rec.ratio < opts.eps) {
      result.history.records.push_back(rec);
      result.P = std::move(P);
      result.K = std::move(K);
      result.K_Y = Matrix::Zero(result.K.rows(), result.K.cols());
      result.iterations = k;
      result.resets = q;
      return result;
    }
    if (!bounds.contains(P_tilde, q)) {
      rec.reset = true;
      P = P0;
      ++q;
    } else {
      P = SymMatrix(P_tilde);
    }
    result.history.records.push_back(std::move(rec));
  }
  throw NonConvergence<ViHistory>(
      "value iteration did not converge within " +
          std::to_string(opts.max_iter) + " iterations",
      opts.max_iter, std::move(result.history));
}

}  // namespace mfglq::detail

#endif  // MFGLQ_SRC_ITERATION_HPP_
