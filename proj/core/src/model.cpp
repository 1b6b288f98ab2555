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

#include "mfglq/model.hpp"

#include <cmath>
#include <complex>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "iteration.hpp"
#include "mfglq/errors.hpp"

namespace mfglq {

namespace {

bool all_finite(const Matrix& m) { return m.allFinite(); }

std::string shape(const Matrix& m) {
  return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

void require_gain_shape(const SystemModel& model, const Matrix& k,
                        const char* name) {
  if (k.rows() != model.m() || k.cols() != model.n()) {
    throw DimensionError(std::string(name) + " is " + shape(k) +
                         ", expected " + std::to_string(model.m()) + "x" +
                         std::to_string(model.n()));
  }
}

Matrix shifted(const SystemModel& model, const Matrix& k) {
  const Index n = model.n();
  return model.A - model.B * k - 0.5 * model.rho * Matrix::Identity(n, n);
}

}  // namespace

void SystemModel::validate() const {
  const Index dim = A.rows();
  if (dim < 1 || A.cols() != dim) {
    throw DimensionError("A must be square and non-empty, got " + shape(A));
  }
  if (B.rows() != dim || B.cols() < 1) {
    throw DimensionError("B is " + shape(B) + ", expected " +
                         std::to_string(dim) + " rows");
  }
  if (C.rows() != dim || C.cols() < 1) {
    throw DimensionError("C is " + shape(C) + ", expected " +
                         std::to_string(dim) + " rows");
  }
  if (Q.dim() != dim) {
    throw DimensionError("Q must be " + std::to_string(dim) + "x" +
                         std::to_string(dim));
  }
  if (R.dim() != B.cols()) {
    throw DimensionError("R must be " + std::to_string(B.cols()) + "x" +
                         std::to_string(B.cols()));
  }
  if (!all_finite(A) || !all_finite(B) || !all_finite(C) ||
      !all_finite(Q.matrix()) || !all_finite(R.matrix()) ||
      !std::isfinite(rho)) {
    throw PreconditionError("model contains non-finite entries");
  }
  if (rho < 0.0) throw PreconditionError("rho must be non-negative");
  if (!is_positive_definite(Q)) {
    throw PreconditionError("Q must be positive definite");
  }
  if (!is_positive_definite(R)) {
    throw PreconditionError("R must be positive definite");
  }
}

bool BoundSchedule::contains(const Matrix& p, int q) const {
  const SymMatrix sym(p);
  const double size = norm2(sym.matrix());
  if (size > radius(q)) return false;
  return min_eigenvalue(sym) >= -1e-10 * size;
}

Assumption1Report validate_assumption1(const SystemModel& model) {
  using Complex = std::complex<double>;
  using CMatrix = Eigen::MatrixXcd;

  Eigen::EigenSolver<Matrix> es(model.A, false);
  if (es.info() != Eigen::Success) {
    throw NumericalError("validate_assumption1: eigenvalues did not converge");
  }
  const Index n = model.n();
  const double tol = 1e-9 * std::max(1.0, norm2(model.A));

  Assumption1Report report{true, true};
  for (Index l = 0; l < n; ++l) {
    const Complex lambda = es.eigenvalues()(l);
    if (std::abs(lambda.real() - model.rho) <= tol) report.spectrum_ok = false;
    if (lambda.real() < 0.0) continue;

    // Hautus: rank [A - lambda I, B] = n.
    CMatrix hautus(n, n + model.m());
    hautus.leftCols(n) = model.A.cast<Complex>() -
                         lambda * CMatrix::Identity(n, n);
    hautus.rightCols(model.m()) = model.B.cast<Complex>();
    Eigen::JacobiSVD<CMatrix> svd(hautus);
    const auto& s = svd.singularValues();
    Index rank = 0;
    for (Index i = 0; i < s.size(); ++i) {
      if (s(i) > kRankTolerance * s(0)) ++rank;
    }
    if (rank < n) report.stabilizable = false;
  }
  return report;
}

bool validate_assumption2(const SystemModel& model) {
  const Index n = model.n();
  return is_hurwitz(model.A - 0.5 * model.rho * Matrix::Identity(n, n));
}

std::pair<double, double> are_residual(const SystemModel& model,
                                       const RiccatiPair& pair) {
  const Matrix BRB = model.B * detail::solve_r(model.R, model.B.transpose());
  auto residual = [&](const Matrix& x) {
    return Matrix(model.rho * x - x * model.A - model.A.transpose() * x +
                  x * BRB * x);
  };
  const Matrix rp = residual(pair.P.matrix()) - model.Q.matrix();
  const Matrix ry = residual(pair.Y.matrix());
  return {rp.norm(), ry.norm()};
}

GainPair decentralized_gains(const RiccatiPair& pair,
                             const SystemModel& model) {
  const Matrix bt = model.B.transpose();
  return GainPair{detail::solve_r(model.R, bt * pair.P.matrix()),
                  detail::solve_r(model.R, bt * pair.Y.matrix())};
}

PiResult model_pi(const SystemModel& model, const Matrix& K0,
                  const Matrix& K0_Y, const PiOptions& opts) {
  model.validate();
  require_gain_shape(model, K0, "K0");
  require_gain_shape(model, K0_Y, "K0_Y");
  if (!is_hurwitz(model.A - model.B * K0)) {
    throw InitializationError("model_pi: A - B K0 is not Hurwitz");
  }
  if (!is_hurwitz(model.A - model.B * K0_Y)) {
    throw InitializationError("model_pi: A - B K0_Y is not Hurwitz");
  }

  const Matrix bt = model.B.transpose();
  auto evaluate = [&](const Matrix& k_prev, bool include_q) {
    const Matrix f = shifted(model, k_prev);
    if (!is_hurwitz(f)) {
      throw NumericalError(
          "model_pi: A - rho/2 I - B K lost the Hurwitz property");
    }
    Matrix w = k_prev.transpose() * model.R.matrix() * k_prev;
    if (include_q) w += model.Q.matrix();
    SymMatrix p = solve_lyapunov(f, SymMatrix(w));
    Matrix l = bt * p.matrix();
    return std::pair{std::move(p), std::move(l)};
  };
  return detail::run_pi_loop(K0, K0_Y, model.R, opts, evaluate);
}

ViResult model_vi(const SystemModel& model, const SymMatrix& P0,
                  const StepSchedule& gamma, const BoundSchedule& bounds,
                  const ViOptions& opts) {
  model.validate();
  if (P0.dim() != model.n()) {
    throw DimensionError("model_vi: P0 has wrong dimension");
  }
  if (!validate_assumption2(model)) {
    throw PreconditionError("model_vi: A - rho/2 I is not Hurwitz");
  }
  if (!is_positive_definite(P0)) {
    throw PreconditionError("model_vi: P0 must be positive definite");
  }

  const Matrix bt = model.B.transpose();
  auto evaluate = [&](const SymMatrix& p) {
    const Matrix& pm = p.matrix();
    SymMatrix m(Matrix(-model.rho * pm + model.A.transpose() * pm +
                       pm * model.A));
    Matrix nmat = bt * pm;
    return std::pair{std::move(m), std::move(nmat)};
  };
  return detail::run_vi_loop(P0, model.Q, model.R, gamma, bounds, opts,
                             evaluate);
}

}  // namespace mfglq
