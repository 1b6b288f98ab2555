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

// Run configuration shared by every subcommand. A config is one JSON
// document; it may name a built-in run in "base" and override any subset of
// its fields (JSON merge patch).

#ifndef MFGLQ_CLI_CONFIG_HPP_
#define MFGLQ_CLI_CONFIG_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mfglq/datamat.hpp"
#include "mfglq/model.hpp"
#include "mfglq/simulate.hpp"

namespace mfglq::cli {

enum class LearnerKind { kPi, kVi };

struct TrajectoryConfig {
  TimeGrid grid;
  MonteCarloOptions mc;
  InitialLaw initial = InitialLaw::point(Vector::Zero(1));
  FeedbackPolicy policy;
};

struct LearnerConfig {
  LearnerKind kind = LearnerKind::kPi;
  Matrix K0;
  Matrix K0_Y;
  PiOptions pi;
  SymMatrix P0;
  StepSchedule gamma;
  BoundSchedule bounds;
  ViOptions vi;
};

struct PopulationConfig {
  PopulationOptions options;
  InitialLaw initial = InitialLaw::point(Vector::Zero(1));
  std::size_t csv_stride = 100;
};

struct RunConfig {
  // Built-in example the model came from ("example1" or "example2"), empty
  // for an inline model.
  std::string example;
  SystemModel model;
  TrajectoryConfig trajectory;
  IntervalSet intervals = IntervalSet::uniform(0.0, 0.1, 20);
  LearnerConfig learner;
  std::optional<PopulationConfig> population;
  std::string out = "out";
};

// Names accepted by builtin_config and by "base".
const std::vector<std::string>& builtin_names();

// Parses and validates a config document. Throws PreconditionError or
// DimensionError for values that fail their module preconditions and
// IoError for malformed JSON.
RunConfig parse_config(std::string_view text);

// Built-in run by name; PreconditionError for unknown names.
RunConfig builtin_config(std::string_view name);

// `source` is a built-in name or a path to a config file.
RunConfig load_config(const std::string& source);

// Canonical JSON for a built-in run, usable as a starting point for edits.
std::string builtin_config_json(std::string_view name);

// Stabilizing initial gains used to compute the ground truth of a built-in
// example.
std::optional<GainPair> reference_gains(std::string_view example);

}  // namespace mfglq::cli

#endif  // MFGLQ_CLI_CONFIG_HPP_
