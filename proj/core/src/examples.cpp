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

#include "mfglq/examples.hpp"

namespace mfglq::examples {

SystemModel example1() {
  SystemModel model;
  model.A.resize(2, 2);
  model.A << 5, 3,
             10, 12;
  model.B.resize(2, 1);
  model.B << 0,
             1;
  model.C.resize(2, 2);
  model.C << 0.1, 0.1,
             0.1, 0.1;
  model.Q = SymMatrix(Matrix(10.0 * Matrix::Identity(2, 2)));
  model.R = SymMatrix::identity(1);
  model.rho = 0.01;
  return model;
}

SystemModel example2() {
  SystemModel model;
  model.A.resize(3, 3);
  model.A << -5, 1, -0.0751,
             0, -0.6250, -39.2699,
             -0.0045, 0, -0.4127;
  model.B.resize(3, 1);
  model.B << 1.4542,
             -0.0154,
             0.4127;
  model.C.resize(3, 2);
  model.C << 3, 0.1,
             0.5, -2,
             1, 0;
  Matrix q = Matrix::Zero(3, 3);
  q.diagonal() << 5, 1, 1;
  model.Q = SymMatrix(q);
  model.R = SymMatrix::identity(1);
  model.rho = 0.01;
  return model;
}

}  // namespace mfglq::examples
