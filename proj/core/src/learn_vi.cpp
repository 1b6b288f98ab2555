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

#include "mfglq/learn_vi.hpp"

#include <string>
#include <utility>

#include "iteration.hpp"
#include "mfglq/errors.hpp"

namespace mfglq {

ViStep vi_step_solve(const DataMatrices& dm, const SymMatrix& P) {
  dm.validate();
  if (P.dim() != dm.n) {
    throw DimensionError("vi_step_solve: P does not match the data dimension");
  }
  const Index n = dm.n;
  const Index m = dm.m;
  const Index head = sym_size(n);

  Matrix lhs(dm.I.rows(), head + m * n);
  lhs << dm.IXhat, 2.0 * dm.IXV;
  const Vector rhs = dm.I * vecs(P);

  Vector sol;
  try {
    sol = solve_lstsq(lhs, rhs);
  } catch (const RankDeficientError& e) {
    throw RankDeficientError(
        std::string("vi_step_solve: ") + e.what() +
            "; use a richer exploration signal or more intervals",
        e.rank(), e.required());
  }
  return ViStep{unvecs(sol.head(head), n), unvec(sol.tail(m * n), m, n)};
}

ViResult run_data_vi(const DataMatrices& dm, const SymMatrix& P0,
                     const StepSchedule& gamma, const BoundSchedule& bounds,
                     const SymMatrix& Q, const SymMatrix& R,
                     const ViOptions& opts) {
  dm.validate();
  if (P0.dim() != dm.n || Q.dim() != dm.n || R.dim() != dm.m) {
    throw DimensionError("run_data_vi: P0/Q/R do not match the data");
  }
  if (!is_positive_definite(P0)) {
    throw PreconditionError("run_data_vi: P0 must be positive definite");
  }
  auto evaluate = [&](const SymMatrix& p) {
    ViStep step = vi_step_solve(dm, p);
    return std::pair{std::move(step.M), std::move(step.N)};
  };
  return detail::run_vi_loop(P0, Q, R, gamma, bounds, opts, evaluate);
}

}  // namespace mfglq
