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

// Data-driven policy iteration. Each step solves, in the least-squares sense,
//   [I, -2 IX (I_n (x) K') - 2 IXV] [vecs(P); vec(L)] = IX vec(-K'RK - Q)
// for the value matrix P and L = B'P, using nothing but the data matrices.
// The Y-branch is the same system without Q.

#ifndef MFGLQ_LEARN_PI_HPP_
#define MFGLQ_LEARN_PI_HPP_

#include "mfglq/datamat.hpp"
#include "mfglq/linalg.hpp"
#include "mfglq/model.hpp"

namespace mfglq {

struct PiStep {
  SymMatrix P;
  Matrix L;  // m x n estimate of B'P
};

// One evaluation step from gain K_prev. `Q` may be the zero matrix for the
// Y-branch. Throws RankDeficientError when the stacked system lacks full
// column rank; the remedy is richer exploration or more intervals.
PiStep pi_step(const DataMatrices& dm, const Matrix& K_prev, const SymMatrix& Q,
               const SymMatrix& R);

// Alternates P- and Y-branch steps with K <- R^-1 L until both gain steps
// fall below opts.eps. The initial gains must stabilize the unknown system;
// that cannot be checked from data.
PiResult run_data_pi(const DataMatrices& dm, const Matrix& K0,
                     const Matrix& K0_Y, const SymMatrix& R,
                     const SymMatrix& Q, const PiOptions& opts = {});

}  // namespace mfglq

#endif  // MFGLQ_LEARN_PI_HPP_
