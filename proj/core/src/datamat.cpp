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

#include "mfglq/datamat.hpp"

#include <cmath>
#include <string>

#include "mfglq/errors.hpp"

namespace mfglq {

namespace {

RankReport rank_report(const Matrix& stacked, Index n, Index m) {
  RankReport report;
  report.required = static_cast<std::size_t>(m * n + sym_size(n));
  report.rank = static_cast<std::size_t>(numerical_rank(stacked));
  report.satisfied = report.rank == report.required;
  return report;
}

Matrix hstack(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows(), a.cols() + b.cols());
  out << a, b;
  return out;
}

}  // namespace

IntervalSet::IntervalSet(std::vector<double> s) : s_(std::move(s)) {
  if (s_.size() < 2) {
    throw PreconditionError("interval set needs at least two points");
  }
  for (std::size_t j = 0; j + 1 < s_.size(); ++j) {
    if (!(s_[j] < s_[j + 1])) {
      throw PreconditionError("interval points must be strictly increasing");
    }
  }
}

IntervalSet IntervalSet::uniform(double start, double spacing,
                                 std::size_t count) {
  std::vector<double> s(count + 1);
  for (std::size_t j = 0; j <= count; ++j) {
    s[j] = start + static_cast<double>(j) * spacing;
  }
  return IntervalSet(std::move(s));
}

void DataMatrices::validate() const {
  const Index d = I.rows();
  if (n < 1 || m < 1 || d < 1) {
    throw DimensionError("data matrices: empty dimensions");
  }
  if (I.cols() != sym_size(n) || IX.rows() != d || IX.cols() != n * n ||
      IXV.rows() != d || IXV.cols() != n * m || IXhat.rows() != d ||
      IXhat.cols() != sym_size(n)) {
    throw DimensionError("data matrices: block sizes disagree with n=" +
                         std::to_string(n) + ", m=" + std::to_string(m) +
                         ", d=" + std::to_string(d));
  }
  if (!intervals.empty() && intervals.size() != static_cast<std::size_t>(d) + 1) {
    throw DimensionError("data matrices: interval count disagrees with rows");
  }
}

DataMatrices build_data_matrices(const MeanTrajectory& traj,
                                 const IntervalSet& intervals, double rho) {
  const Index n = traj.X.rows();
  const Index m = traj.V.rows();
  const auto& grid = traj.grid;
  if (traj.X.cols() != static_cast<Index>(grid.points()) ||
      traj.V.cols() != traj.X.cols()) {
    throw DimensionError("trajectory length does not match its grid");
  }
  const std::size_t d = intervals.d();

  std::vector<std::size_t> idx(d + 1);
  for (std::size_t j = 0; j <= d; ++j) {
    idx[j] = grid.nearest_index(intervals.points()[j]);
  }

  DataMatrices dm;
  dm.n = n;
  dm.m = m;
  dm.rho = rho;
  dm.intervals = intervals.points();
  dm.I.resize(static_cast<Index>(d), sym_size(n));
  dm.IX.resize(static_cast<Index>(d), n * n);
  dm.IXV.resize(static_cast<Index>(d), n * m);
  dm.IXhat.resize(static_cast<Index>(d), sym_size(n));

  auto weight = [&](std::size_t k) { return std::exp(-rho * grid.at(k)); };
  for (std::size_t j = 0; j < d; ++j) {
    const std::size_t a = idx[j];
    const std::size_t b = idx[j + 1];
    if (a >= b) {
      throw RangeError("intervals collapse on the trajectory grid near s = " +
                       std::to_string(intervals.points()[j]));
    }
    const Index row = static_cast<Index>(j);
    dm.I.row(row) = (weight(b) * bar(traj.X.col(static_cast<Index>(b))) -
                     weight(a) * bar(traj.X.col(static_cast<Index>(a))))
                        .transpose();

    Vector ix = Vector::Zero(n * n);
    Vector ixv = Vector::Zero(n * m);
    Vector ixhat = Vector::Zero(sym_size(n));
    for (std::size_t k = a; k <= b; ++k) {
      const double w = (k == a || k == b ? 0.5 : 1.0) * grid.dt * weight(k);
      const Vector x = traj.X.col(static_cast<Index>(k));
      const Vector v = traj.V.col(static_cast<Index>(k));
      ix += w * kron(x, x);
      ixv += w * kron(x, v);
      ixhat += w * bar(x);
    }
    dm.IX.row(row) = ix.transpose();
    dm.IXV.row(row) = ixv.transpose();
    dm.IXhat.row(row) = ixhat.transpose();
  }
  return dm;
}

RankReport check_rank_pi(const DataMatrices& dm) {
  return rank_report(hstack(dm.IX, dm.IXV), dm.n, dm.m);
}

RankReport check_rank_vi(const DataMatrices& dm) {
  return rank_report(hstack(dm.IXhat, dm.IXV), dm.n, dm.m);
}

}  // namespace mfglq
