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

// Data matrices built from one mean trajectory over the intervals
// s_0 < s_1 < ... < s_d. Row j collects
//   I     : e^{-rho s_{j+1}} bar(X(s_{j+1}))' - e^{-rho s_j} bar(X(s_j))'
//   IX    : int e^{-rho t} (X (x) X)' dt
//   IXV   : int e^{-rho t} (X (x) V)' dt
//   IXhat : int e^{-rho t} bar(X)' dt
// with integrals taken by the composite trapezoid rule on the trajectory grid.

#ifndef MFGLQ_DATAMAT_HPP_
#define MFGLQ_DATAMAT_HPP_

#include <cstddef>
#include <vector>

#include "mfglq/linalg.hpp"
#include "mfglq/simulate.hpp"

namespace mfglq {

class IntervalSet {
 public:
  // Throws PreconditionError unless there are at least two strictly
  // increasing points.
  explicit IntervalSet(std::vector<double> s);

  // s_0 = start, s_{j+1} = s_j + spacing, j < count.
  static IntervalSet uniform(double start, double spacing, std::size_t count);

  std::size_t d() const { return s_.size() - 1; }
  const std::vector<double>& points() const { return s_; }

 private:
  std::vector<double> s_;
};

struct DataMatrices {
  Matrix I;      // d x n(n+1)/2
  Matrix IX;     // d x n^2
  Matrix IXV;    // d x nm
  Matrix IXhat;  // d x n(n+1)/2
  Index n = 0;
  Index m = 0;
  double rho = 0.0;
  std::vector<double> intervals;

  std::size_t rows() const { return static_cast<std::size_t>(I.rows()); }
  // Throws DimensionError when the blocks disagree with (n, m, d).
  void validate() const;
};

// Interval endpoints snap to the nearest grid point. Throws RangeError when an
// endpoint lies outside the trajectory.
DataMatrices build_data_matrices(const MeanTrajectory& traj,
                                 const IntervalSet& intervals, double rho);

struct RankReport {
  std::size_t rank = 0;
  std::size_t required = 0;
  bool satisfied = false;
};

// rank [IX, IXV] against mn + n(n+1)/2.
RankReport check_rank_pi(const DataMatrices& dm);
// rank [IXhat, IXV] against mn + n(n+1)/2.
RankReport check_rank_vi(const DataMatrices& dm);

}  // namespace mfglq

#endif  // MFGLQ_DATAMAT_HPP_
