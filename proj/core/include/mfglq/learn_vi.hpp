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

// Data-driven value iteration. The pair M = -rho P + A'P + PA, N = B'P is
// recovered from data by the least-squares solve
//   [IXhat, 2 IXV] [vecs(M); vec(N)] = I vecs(P)
// and fed to the same projected update as the model-based solver. No
// stabilizing initial gain is needed.

#ifndef MFGLQ_LEARN_VI_HPP_
#define MFGLQ_LEARN_VI_HPP_

#include "mfglq/datamat.hpp"
#include "mfglq/linalg.hpp"
#include "mfglq/model.hpp"

namespace mfglq {

struct ViStep {
  SymMatrix M;
  Matrix N;
};

ViStep vi_step_solve(const DataMatrices& dm, const SymMatrix& P);

// K_Y is reported as zero: the second Riccati equation has Y* = 0 whenever
// A - rho/2 I is Hurwitz, which is this learner's operating assumption.
ViResult run_data_vi(const DataMatrices& dm, const SymMatrix& P0,
                     const StepSchedule& gamma, const BoundSchedule& bounds,
                     const SymMatrix& Q, const SymMatrix& R,
                     const ViOptions& opts = {});

}  // namespace mfglq

#endif  // MFGLQ_LEARN_VI_HPP_
