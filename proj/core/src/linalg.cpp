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

#include "mfglq/linalg.hpp"

#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/SVD>

#include "mfglq/errors.hpp"

namespace mfglq {

SymMatrix::SymMatrix(Index dim) : m_(Matrix::Zero(dim, dim)) {}

SymMatrix::SymMatrix(const Matrix& m) {
  if (m.rows() != m.cols()) {
    throw DimensionError("SymMatrix: matrix is " + std::to_string(m.rows()) +
                         "x" + std::to_string(m.cols()) + ", not square");
  }
  m_ = 0.5 * (m + m.transpose());
}

SymMatrix SymMatrix::identity(Index dim) {
  return SymMatrix(Matrix(Matrix::Identity(dim, dim)));
}

SymMatrix SymMatrix::operator+(const SymMatrix& other) const {
  return SymMatrix(Matrix(m_ + other.m_));
}

SymMatrix SymMatrix::operator-(const SymMatrix& other) const {
  return SymMatrix(Matrix(m_ - other.m_));
}

SymMatrix SymMatrix::operator*(double s) const {
  return SymMatrix(Matrix(s * m_));
}

Vector vecs(const SymMatrix& s) {
  const Index n = s.dim();
  Vector v(sym_size(n));
  Index k = 0;
  for (Index i = 0; i < n; ++i) {
    v(k++) = s(i, i);
    for (Index j = i + 1; j < n; ++j) v(k++) = 2.0 * s(i, j);
  }
  return v;
}

SymMatrix unvecs(const Vector& v, Index dim) {
  if (dim < 1 || v.size() != sym_size(dim)) {
    throw DimensionError("unvecs: length " + std::to_string(v.size()) +
                         " does not match dim " + std::to_string(dim));
  }
  Matrix m(dim, dim);
  Index k = 0;
  for (Index i = 0; i < dim; ++i) {
    m(i, i) = v(k++);
    for (Index j = i + 1; j < dim; ++j) {
      m(i, j) = 0.5 * v(k++);
      m(j, i) = m(i, j);
    }
  }
  return SymMatrix(m);
}

Vector bar(const Vector& z) {
  const Index n = z.size();
  Vector v(sym_size(n));
  Index k = 0;
  for (Index i = 0; i < n; ++i) {
    for (Index j = i; j < n; ++j) v(k++) = z(i) * z(j);
  }
  return v;
}

Vector vec(const Matrix& m) {
  return Eigen::Map<const Vector>(m.data(), m.size());
}

Matrix unvec(const Vector& v, Index rows, Index cols) {
  if (v.size() != rows * cols) {
    throw DimensionError("unvec: length " + std::to_string(v.size()) +
                         " does not match " + std::to_string(rows) + "x" +
                         std::to_string(cols));
  }
  return Eigen::Map<const Matrix>(v.data(), rows, cols);
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

double norm2(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues()(0);
}

Index numerical_rank(const Matrix& a, double rel_tol) {
  if (a.size() == 0) return 0;
  Eigen::JacobiSVD<Matrix> svd(a);
  const Vector& s = svd.singularValues();
  if (s(0) == 0.0) return 0;
  Index rank = 0;
  for (Index i = 0; i < s.size(); ++i) {
    if (s(i) > rel_tol * s(0)) ++rank;
  }
  return rank;
}

Vector solve_lstsq(const Matrix& a, const Vector& b, double rel_tol) {
  if (a.rows() < 1 || a.cols() < 1) {
    throw DimensionError("solve_lstsq: empty system matrix");
  }
  if (a.rows() != b.size()) {
    throw DimensionError("solve_lstsq: A has " + std::to_string(a.rows()) +
                         " rows but b has " + std::to_string(b.size()));
  }
  Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Vector& s = svd.singularValues();
  Index rank = 0;
  if (s(0) > 0.0) {
    for (Index i = 0; i < s.size(); ++i) {
      if (s(i) > rel_tol * s(0)) ++rank;
    }
  }
  if (rank < a.cols()) {
    throw RankDeficientError(
        "solve_lstsq: numerical rank " + std::to_string(rank) + " < " +
            std::to_string(a.cols()) + " columns",
        static_cast<std::size_t>(rank), static_cast<std::size_t>(a.cols()));
  }
  return svd.solve(b);
}

SymMatrix solve_lyapunov(const Matrix& f, const SymMatrix& w) {
  const Index n = f.rows();
  if (f.cols() != n || w.dim() != n) {
    throw DimensionError("solve_lyapunov: F and W must be square of equal size");
  }
  const Matrix eye = Matrix::Identity(n, n);
  const Matrix ft = f.transpose();
  const Matrix op = kron(eye, ft) + kron(ft, eye);
  Eigen::FullPivLU<Matrix> lu(op);
  if (!lu.isInvertible() || lu.rcond() < 1e-14) {
    throw SolvabilityError(
        "solve_lyapunov: vectorized operator is singular; F is not Hurwitz or "
        "has eigenvalues symmetric about the imaginary axis");
  }
  const Vector p = lu.solve(Vector(-vec(w.matrix())));
  return SymMatrix(unvec(p, n, n));
}

bool is_hurwitz(const Matrix& m, double margin) {
  if (m.rows() != m.cols()) {
    throw DimensionError("is_hurwitz: matrix is not square");
  }
  Eigen::EigenSolver<Matrix> es(m, /*computeEigenvectors=*/false);
  if (es.info() != Eigen::Success) {
    throw NumericalError("is_hurwitz: eigenvalue iteration did not converge");
  }
  for (Index i = 0; i < es.eigenvalues().size(); ++i) {
    if (!(es.eigenvalues()(i).real() < -margin)) return false;
  }
  return true;
}

double min_eigenvalue(const SymMatrix& s) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(s.matrix(), Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) {
    throw NumericalError("min_eigenvalue: eigenvalue iteration did not converge");
  }
  return es.eigenvalues()(0);
}

bool is_positive_definite(const SymMatrix& s, double rel_tol) {
  return min_eigenvalue(s) > rel_tol * norm2(s.matrix());
}

bool is_positive_semidefinite(const SymMatrix& s, double rel_tol) {
  return min_eigenvalue(s) >= -rel_tol * norm2(s.matrix());
}

double relative_error(const Matrix& a, const Matrix& b) {
  const double diff = norm2(a - b);
  const double ref = norm2(b);
  return ref > 0.0 ? diff / ref : diff;
}

}  // namespace mfglq
