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

// Dense linear-algebra helpers for the vectorization calculus used by the
// solvers: half-vectorization of symmetric matrices, quadratic monomial
// lifting, Kronecker products, Lyapunov solves, rank-revealing least squares
// and Hurwitz tests.
//
// vec() stacks columns. vecs() and bar() enumerate the upper triangle row by
// row, so that bar(z).dot(vecs(S)) == z' S z for every symmetric S.

#ifndef MFGLQ_LINALG_HPP_
#define MFGLQ_LINALG_HPP_

#include <Eigen/Dense>

namespace mfglq {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

// Singular values below kRankTolerance * sigma_max count as zero.
inline constexpr double kRankTolerance = 1e-10;

// Square symmetric matrix. Construction from a general square matrix
// symmetrizes it as (M + M')/2, which leaves an exactly symmetric input
// unchanged.
class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(Index dim);
  explicit SymMatrix(const Matrix& m);

  static SymMatrix identity(Index dim);
  static SymMatrix zero(Index dim) { return SymMatrix(dim); }

  Index dim() const noexcept { return m_.rows(); }
  const Matrix& matrix() const noexcept { return m_; }
  double operator()(Index i, Index j) const { return m_(i, j); }

  SymMatrix operator+(const SymMatrix& other) const;
  SymMatrix operator-(const SymMatrix& other) const;
  SymMatrix operator*(double s) const;

 private:
  Matrix m_;
};

inline SymMatrix operator*(double s, const SymMatrix& m) { return m * s; }

// [S11, 2 S12, ..., 2 S1m, S22, 2 S23, ..., Smm].
Vector vecs(const SymMatrix& s);

// Inverse of vecs(). Throws DimensionError when v.size() != dim(dim+1)/2.
SymMatrix unvecs(const Vector& v, Index dim);

// [z1^2, z1 z2, ..., z1 zm, z2^2, ..., zm^2].
Vector bar(const Vector& z);

// Column-stacking vectorization and its inverse.
Vector vec(const Matrix& m);
Matrix unvec(const Vector& v, Index rows, Index cols);

Matrix kron(const Matrix& a, const Matrix& b);

// Number of entries of vecs() for an n x n matrix.
constexpr Index sym_size(Index n) { return n * (n + 1) / 2; }

// Induced 2-norm (largest singular value).
double norm2(const Matrix& m);

Index numerical_rank(const Matrix& a, double rel_tol = kRankTolerance);

// Least-squares minimizer of |Ax - b|. Requires full column rank; otherwise
// throws RankDeficientError carrying the numerical rank.
Vector solve_lstsq(const Matrix& a, const Vector& b,
                   double rel_tol = kRankTolerance);

// Unique symmetric P with F'P + PF + W = 0, solved as the dense system
// [I (x) F' + F' (x) I] vec(P) = -vec(W). Throws SolvabilityError when that
// system is singular (F has eigenvalues mirrored across the imaginary axis).
SymMatrix solve_lyapunov(const Matrix& f, const SymMatrix& w);

// True iff every eigenvalue has real part < -margin.
bool is_hurwitz(const Matrix& m, double margin = 0.0);

// Smallest eigenvalue of a symmetric matrix.
double min_eigenvalue(const SymMatrix& s);

// Definiteness tests with eigenvalue threshold rel_tol * |S|.
bool is_positive_definite(const SymMatrix& s, double rel_tol = 1e-10);
bool is_positive_semidefinite(const SymMatrix& s, double rel_tol = 1e-10);

// Relative error |a - b| / |b| in the induced 2-norm; |a - b| when b == 0.
double relative_error(const Matrix& a, const Matrix& b);

}  // namespace mfglq

#endif  // MFGLQ_LINALG_HPP_
