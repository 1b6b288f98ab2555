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

// File formats. Matrices are nested row-major JSON arrays; trajectories and
// iteration histories are CSV with a header row.

#ifndef MFGLQ_SERIALIZE_HPP_
#define MFGLQ_SERIALIZE_HPP_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include "mfglq/datamat.hpp"
#include "mfglq/model.hpp"
#include "mfglq/simulate.hpp"

namespace mfglq {

// {"A": [[...]], "B": ..., "C": ..., "Q": ..., "R": ..., "rho": x}.
std::string model_to_json(const SystemModel& model);
// Throws IoError on malformed documents; the result is validated.
SystemModel model_from_json(std::string_view text);

// {"I", "IX", "IXV", "IXhat", "n", "m", "rho", "intervals"}.
std::string data_matrices_to_json(const DataMatrices& dm);
DataMatrices data_matrices_from_json(std::string_view text);

// Reads {"K": [[...]], "K_Y": [[...]]}; other keys are ignored, so a learner
// summary doubles as a gains file.
GainPair gains_from_json(std::string_view text);

// Rows "t, X_1..X_n, V_1..V_m", one per grid point.
void write_trajectory_csv(std::ostream& out, const MeanTrajectory& traj);

// {"grid": {"t0", "dt", "steps"}, "seed", "samples"}.
std::string trajectory_sidecar_json(const TimeGrid& grid, std::uint64_t seed,
                                    std::size_t samples);

// Rows "t, avg_1..avg_n, agg_1..agg_n" every `stride` grid points.
void write_population_mean_csv(std::ostream& out, const PopulationRun& run,
                               std::size_t stride = 1);
// Rows "t, a0_x1..a0_xn, a1_x1, ..." every `stride` grid points.
void write_population_agents_csv(std::ostream& out, const PopulationRun& run,
                                 std::size_t stride = 1);

// Rows "k, k_step, ky_step, vecs(P)..., vecs(Y)...".
void write_pi_history_csv(std::ostream& out, const PiHistory& history);
// Rows "k, gamma, q, reset, ratio, vecs(P)...".
void write_vi_history_csv(std::ostream& out, const ViHistory& history);

// Reads a whole file or throws IoError.
std::string read_text_file(const std::string& path);
// Writes a whole file or throws IoError.
void write_text_file(const std::string& path, std::string_view text);

}  // namespace mfglq

#endif  // MFGLQ_SERIALIZE_HPP_
