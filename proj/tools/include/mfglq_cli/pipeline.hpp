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

// The stages behind the subcommands, as in-process functions. Each stage
// computes first and only then hands its files to write_*, so a failing stage
// leaves nothing behind.

#ifndef MFGLQ_CLI_PIPELINE_HPP_
#define MFGLQ_CLI_PIPELINE_HPP_

#include <optional>
#include <string>
#include <vector>

#include "mfglq/datamat.hpp"
#include "mfglq/model.hpp"
#include "mfglq/simulate.hpp"
#include "mfglq_cli/config.hpp"

namespace mfglq::cli {

struct CollectResult {
  MeanTrajectory trajectory;
  DataMatrices data;
  RankReport rank;  // for the configured learner
};

CollectResult collect(const RunConfig& cfg);

// Writes data.json, trajectory.csv and trajectory.json into `dir`.
void write_collect(const std::string& dir, const RunConfig& cfg,
                   const CollectResult& result);

struct Reference {
  PiResult truth;
  double k_error = 0.0;
  std::optional<double> ky_error;  // absent when the true K_Y is zero
};

struct LearnResult {
  LearnerKind kind = LearnerKind::kPi;
  int iterations = 0;
  int resets = 0;
  GainPair gains;
  RiccatiPair values;  // Y is zero for value iteration
  PiHistory pi_history;
  ViHistory vi_history;
  std::optional<Reference> reference;
};

// Throws DimensionError (before any work) when `data` does not match the
// model's n and m, and PreconditionError when its discount differs.
LearnResult learn(const RunConfig& cfg, const DataMatrices& data);

// Model-based policy iteration to 1e-12 from the example's reference gains.
std::optional<PiResult> ground_truth(const RunConfig& cfg);

std::string summary_json(const LearnResult& result);

// Writes summary.json and history.csv into `dir`.
void write_learn(const std::string& dir, const LearnResult& result);

struct PopulationResult {
  PopulationRun run;
  double gap = 0.0;
};

// Throws PreconditionError when the config has no population section.
PopulationResult population(const RunConfig& cfg, const GainPair& gains);

// Writes population_mean.csv, population_agents.csv and population.json.
void write_population(const std::string& dir, const RunConfig& cfg,
                      const PopulationResult& result);

struct ReproRow {
  std::string quantity;
  std::string value;
  std::string target;
  bool pass = false;
};

struct ReproReport {
  std::string id;
  RunConfig config;
  CollectResult collected;
  LearnResult learned;
  std::optional<PopulationResult> population;
  std::vector<ReproRow> rows;

  bool passed() const;
};

// Runs ground truth, collect, learn and (example1) population for a built-in
// run. `stage` is updated as the pipeline advances so callers can tag
// failures.
ReproReport repro(const RunConfig& cfg, const std::string& id,
                  std::string* stage = nullptr);

std::string repro_table(const ReproReport& report);

}  // namespace mfglq::cli

#endif  // MFGLQ_CLI_PIPELINE_HPP_
