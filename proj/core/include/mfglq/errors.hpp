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

#ifndef MFGLQ_ERRORS_HPP_
#define MFGLQ_ERRORS_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace mfglq {

// Root of every error thrown by the library. The CLI maps the concrete
// subclasses onto process exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Operand sizes do not conform.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// A documented precondition was violated by the caller (R not positive
// definite, Assumption 2 failing, P0 not positive definite, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Policy iteration was started from gains that do not stabilize the system.
class InitializationError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

// A least-squares system has numerically deficient column rank.
class RankDeficientError : public Error {
 public:
  RankDeficientError(const std::string& what, std::size_t rank,
                     std::size_t required)
      : Error(what), rank_(rank), required_(required) {}

  std::size_t rank() const noexcept { return rank_; }
  std::size_t required() const noexcept { return required_; }

 private:
  std::size_t rank_;
  std::size_t required_;
};

// A linear matrix equation has no unique solution.
class SolvabilityError : public Error {
 public:
  using Error::Error;
};

// Eigenvalue iteration failed, or an iterate lost a property it must keep.
class NumericalError : public Error {
 public:
  using Error::Error;
};

// A simulated path produced a non-finite value.
class DivergenceError : public NumericalError {
 public:
  DivergenceError(const std::string& what, std::size_t step)
      : NumericalError(what), step_(step) {}

  // Index of the first grid point whose state is non-finite or blew up.
  std::size_t step() const noexcept { return step_; }

 private:
  std::size_t step_;
};

// Requested time interval is not covered by the trajectory grid.
class RangeError : public Error {
 public:
  using Error::Error;
};

// File or document could not be read, written or parsed.
class IoError : public Error {
 public:
  using Error::Error;
};

// Iteration limit reached before the stopping test passed.
class NonConvergenceError : public Error {
 public:
  NonConvergenceError(const std::string& what, int iterations)
      : Error(what), iterations_(iterations) {}

  int iterations() const noexcept { return iterations_; }

 private:
  int iterations_;
};

// Non-convergence carrying the full iterate history of the failed run.
template <typename History>
class NonConvergence : public NonConvergenceError {
 public:
  NonConvergence(const std::string& what, int iterations, History history)
      : NonConvergenceError(what, iterations), history_(std::move(history)) {}

  const History& history() const noexcept { return history_; }

 private:
  History history_;
};

}  // namespace mfglq

#endif  // MFGLQ_ERRORS_HPP_
