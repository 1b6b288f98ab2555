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

// Built-in models of the two reference experiments.

#ifndef MFGLQ_EXAMPLES_HPP_
#define MFGLQ_EXAMPLES_HPP_

#include "mfglq/model.hpp"

namespace mfglq::examples {

// Two states, one input, A = [[5, 3], [10, 12]] (open-loop unstable),
// Q = 10 I, R = 1, rho = 0.01.
SystemModel example1();

// Three states, one input, A - rho/2 I Hurwitz, Q = diag(5, 1, 1), R = 1,
// rho = 0.01.
SystemModel example2();

}  // namespace mfglq::examples

#endif  // MFGLQ_EXAMPLES_HPP_
