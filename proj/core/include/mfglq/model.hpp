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

// System model of the LQ mean-field game and the model-based reference
// solvers: Kleinman-style policy iteration on the two Riccati equations and
// projected value iteration on the first one.

#ifndef MFGLQ_MODEL_HPP_
#define MFGLQ_MODEL_HPP_

#include <utility>
#include <vector>

#include "mfglq/linalg.hpp"

namespace mfglq {

// dx = (Ax + Bu) dt + C dW with cost weights Q, R and discount rho.
struct SystemModel {
  Matrix A;
  Matrix B;
  Matrix C;
  SymMatrix Q;
  SymMatrix R;
  double rho = 0.0;

  Index n() const { return A.rows(); }
  Index m() const { return B.cols(); }
  Index p() const { return C.cols(); }

  // Throws DimensionError for non-conformable blocks and PreconditionError
  // when Q or R is not positive definite, rho is negative or an entry is not
  // finite.
  void validate() const;
};

// Feedback gains defining u_i = -K x_i - (K_Y - K) xhat.
struct GainPair {
  Matrix K;
  Matrix K_Y;
};

// Value matrices of the two Riccati equations.
struct RiccatiPair {
  SymMatrix P;
  SymMatrix Y;
};

struct PiRecord {
  int k = 0;
  SymMatrix P;
  SymMatrix Y;
  Matrix K;
  Matrix K_Y;
  double k_step = 0.0;
  double ky_step = 0.0;
};

struct PiHistory {
  std::vector<PiRecord> records;
};

struct PiOptions {
  double eps = 1e-3;
  int max_iter = 100;
};

struct PiResult {
  RiccatiPair solution;
  GainPair gains;
  PiHistory history;
  int iterations = 0;
};

// gamma_k = c / (k + 1). Positive, not summable, square summable.
struct StepSchedule {
  double c = 3.0;
  double gamma(int k) const { return c / (k + 1.0); }
};

// D_q = { P symmetric positive semidefinite : |P| <= c (q + 1) }.
struct BoundSchedule {
  double c = 100.0;
  double radius(int q) const { return c * (q + 1.0); }
  // Symmetrizes p before testing; eigenvalues down to -1e-10 |p| pass as
  // semidefinite.
  bool contains(const Matrix& p, int q) const;
};

struct ViRecord {
  int k = 0;
  int q = 0;           // bound index active when the step was taken
  double gamma = 0.0;
  double ratio = 0.0;  // |Ptilde - P^k| / gamma_k
  bool reset = false;  // Ptilde left D_q and P^{k+1} = P0
  SymMatrix P;         // P^k
  Matrix K;            // K^k
};

struct ViHistory {
  std::vector<ViRecord> records;
};

struct ViOptions {
  double eps = 1e-3;
  int max_iter = 10000;
};

struct ViResult {
  SymMatrix P;
  Matrix K;
  Matrix K_Y;  // zero: Y* = 0 whenever A - rho/2 I is Hurwitz
  ViHistory history;
  int iterations = 0;  // index k of the returned iterate
  int resets = 0;
};

struct Assumption1Report {
  bool spectrum_ok = false;
  bool stabilizable = false;
  bool ok() const { return spectrum_ok && stabilizable; }
};

// Re(lambda(A)) != rho for every eigenvalue, and (A, B) passes the Hautus
// test for every eigenvalue with non-negative real part.
Assumption1Report validate_assumption1(const SystemModel& model);

// A - rho/2 I is Hurwitz.
bool validate_assumption2(const SystemModel& model);

// Residual norms (Frobenius) of
//   rho P - PA - A'P + P B R^-1 B' P - Q   and
//   rho Y - YA - A'Y + Y B R^-1 B' Y.
std::pair<double, double> are_residual(const SystemModel& model,
                                       const RiccatiPair& pair);

// K = R^-1 B' P, K_Y = R^-1 B' Y.
GainPair decentralized_gains(const RiccatiPair& pair, const SystemModel& model);

// Policy iteration on both Riccati equations. Each step solves the Lyapunov
// equations
//   (A - BK - rho/2 I)' P + P (A - BK - rho/2 I) + K'RK + Q = 0
// (and the same without Q for Y), then updates K = R^-1 B' P. Stops when both
// gain steps fall below opts.eps.
//
// Throws InitializationError when A - B K0 or A - B K0_Y is not Hurwitz and
// NonConvergence<PiHistory> when opts.max_iter is exhausted.
PiResult model_pi(const SystemModel& model, const Matrix& K0,
                  const Matrix& K0_Y, const PiOptions& opts = {});

// Projected value iteration on the first Riccati equation starting from
// P0 > 0:
//   Ptilde = P + gamma_k (PA + A'P - rho P - K'RK + Q),  K = R^-1 B' P.
// Returns (P^k, K^k) at the first k with |Ptilde - P^k| / gamma_k < eps; when
// Ptilde leaves D_q the iterate restarts from P0 and q increments.
//
// Throws PreconditionError unless A - rho/2 I is Hurwitz and P0 > 0.
ViResult model_vi(const SystemModel& model, const SymMatrix& P0,
                  const StepSchedule& gamma = {},
                  const BoundSchedule& bounds = {},
                  const ViOptions& opts = {});

}  // namespace mfglq

#endif  // MFGLQ_MODEL_HPP_
