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

#include "mfglq_cli/pipeline.hpp"

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include <algorithm>
#include <filesystem>
#include <sstream>

#include "json.hpp"
#include "mfglq/errors.hpp"
#include "mfglq/learn_pi.hpp"
#include "mfglq/learn_vi.hpp"
#include "mfglq/serialize.hpp"

namespace mfglq::cli {

namespace {

using nlohmann::json;

constexpr double kErrorTolerance = 0.02;
constexpr double kGapTolerance = 0.15;

json matrix_json(const Matrix& m) {
  json rows = json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string join(const std::string& dir, const char* name) {
  return (std::filesystem::path(dir) / name).string();
}

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create directory " + dir + ": " + ec.message());
}

template <typename Writer>
void write_stream(const std::string& path, Writer&& writer) {
  std::ostringstream buf;
  writer(buf);
  write_text_file(path, buf.str());
}

void set_stage(std::string* stage, const char* name) {
  if (stage != nullptr) *stage = name;
  spdlog::info("stage: {}", name);
}

}  // namespace

CollectResult collect(const RunConfig& cfg) {
  const TrajectoryConfig& t = cfg.trajectory;
  spdlog::info("monte carlo: {} paths, {} steps, {} thread(s), seed {}",
               t.mc.samples, t.grid.steps, t.mc.threads, t.mc.seed);
  CollectResult out;
  out.trajectory = monte_carlo_mean(cfg.model, t.initial, t.policy, t.grid, t.mc);
  out.data = build_data_matrices(out.trajectory, cfg.intervals, cfg.model.rho);
  out.rank = cfg.learner.kind == LearnerKind::kPi ? check_rank_pi(out.data)
                                                  : check_rank_vi(out.data);
  spdlog::debug("data rows {}, rank {}/{}", out.data.rows(), out.rank.rank,
                out.rank.required);
  return out;
}

void write_collect(const std::string& dir, const RunConfig& cfg,
                   const CollectResult& result) {
  ensure_dir(dir);
  write_text_file(join(dir, "data.json"), data_matrices_to_json(result.data));
  write_stream(join(dir, "trajectory.csv"), [&](std::ostream& os) {
    write_trajectory_csv(os, result.trajectory);
  });
  write_text_file(join(dir, "trajectory.json"),
                  trajectory_sidecar_json(cfg.trajectory.grid,
                                          cfg.trajectory.mc.seed,
                                          cfg.trajectory.mc.samples));
}

std::optional<PiResult> ground_truth(const RunConfig& cfg) {
  const auto k0 = reference_gains(cfg.example);
  if (!k0) return std::nullopt;
  return model_pi(cfg.model, k0->K, k0->K_Y, PiOptions{1e-12, 200});
}

LearnResult learn(const RunConfig& cfg, const DataMatrices& data) {
  if (data.n != cfg.model.n() || data.m != cfg.model.m()) {
    throw DimensionError(fmt::format(
        "data has n = {}, m = {} but the model has n = {}, m = {}", data.n,
        data.m, cfg.model.n(), cfg.model.m()));
  }
  if (data.rho != cfg.model.rho) {
    throw PreconditionError(fmt::format(
        "data was built with rho = {} but the model has rho = {}", data.rho,
        cfg.model.rho));
  }
  data.validate();

  LearnResult out;
  out.kind = cfg.learner.kind;
  const LearnerConfig& l = cfg.learner;
  if (l.kind == LearnerKind::kPi) {
    PiResult r = run_data_pi(data, l.K0, l.K0_Y, cfg.model.R, cfg.model.Q, l.pi);
    out.iterations = r.iterations;
    out.gains = std::move(r.gains);
    out.values = std::move(r.solution);
    out.pi_history = std::move(r.history);
  } else {
    ViResult r = run_data_vi(data, l.P0, l.gamma, l.bounds, cfg.model.Q,
                             cfg.model.R, l.vi);
    out.iterations = r.iterations;
    out.resets = r.resets;
    out.gains = GainPair{r.K, r.K_Y};
    out.values = RiccatiPair{r.P, SymMatrix(Matrix::Zero(r.P.dim(), r.P.dim()))};
    out.vi_history = std::move(r.history);
  }
  spdlog::info("learner stopped after {} iteration(s)", out.iterations);

  if (auto truth = ground_truth(cfg)) {
    Reference ref;
    ref.k_error = relative_error(out.gains.K, truth->gains.K);
    if (norm2(truth->gains.K_Y) > 1e-9) {
      ref.ky_error = relative_error(out.gains.K_Y, truth->gains.K_Y);
    }
    ref.truth = std::move(*truth);
    out.reference = std::move(ref);
  }
  return out;
}

std::string summary_json(const LearnResult& result) {
  json doc;
  doc["learner"] = result.kind == LearnerKind::kPi ? "pi" : "vi";
  doc["iterations"] = result.iterations;
  if (result.kind == LearnerKind::kVi) doc["resets"] = result.resets;
  doc["P"] = matrix_json(result.values.P.matrix());
  doc["Y"] = matrix_json(result.values.Y.matrix());
  doc["K"] = matrix_json(result.gains.K);
  doc["K_Y"] = matrix_json(result.gains.K_Y);
  if (result.reference) {
    const PiResult& t = result.reference->truth;
    doc["reference"] = {{"P", matrix_json(t.solution.P.matrix())},
                        {"Y", matrix_json(t.solution.Y.matrix())},
                        {"K", matrix_json(t.gains.K)},
                        {"K_Y", matrix_json(t.gains.K_Y)}};
    json err;
    err["K"] = result.reference->k_error;
    err["K_Y"] = result.reference->ky_error ? json(*result.reference->ky_error)
                                            : json(nullptr);
    doc["relative_error"] = err;
  }
  return doc.dump(2) + "\n";
}

void write_learn(const std::string& dir, const LearnResult& result) {
  ensure_dir(dir);
  write_text_file(join(dir, "summary.json"), summary_json(result));
  write_stream(join(dir, "history.csv"), [&](std::ostream& os) {
    if (result.kind == LearnerKind::kPi) {
      write_pi_history_csv(os, result.pi_history);
    } else {
      write_vi_history_csv(os, result.vi_history);
    }
  });
}

PopulationResult population(const RunConfig& cfg, const GainPair& gains) {
  if (!cfg.population) {
    throw PreconditionError("config has no population section");
  }
  const Index n = cfg.model.n();
  const Index m = cfg.model.m();
  for (const Matrix* k : {&gains.K, &gains.K_Y}) {
    if (k->rows() != m || k->cols() != n) {
      throw DimensionError(fmt::format("gains are {}x{}, the model needs {}x{}",
                                       k->rows(), k->cols(), m, n));
    }
  }
  const PopulationConfig& p = *cfg.population;
  spdlog::info("population: {} agents, xhat from {} samples, seed {}",
               p.options.agents, p.options.aggregate_samples, p.options.seed);
  PopulationResult out;
  out.run = population_sim(cfg.model, gains, p.initial, cfg.trajectory.grid,
                           p.options);
  out.gap = consistency_gap(out.run);
  return out;
}

void write_population(const std::string& dir, const RunConfig& cfg,
                      const PopulationResult& result) {
  ensure_dir(dir);
  const std::size_t stride = cfg.population ? cfg.population->csv_stride : 1;
  write_stream(join(dir, "population_mean.csv"), [&](std::ostream& os) {
    write_population_mean_csv(os, result.run, stride);
  });
  write_stream(join(dir, "population_agents.csv"), [&](std::ostream& os) {
    write_population_agents_csv(os, result.run, stride);
  });
  json doc;
  doc["agents"] = result.run.agents;
  doc["xi0"] = std::vector<double>(result.run.xi0.data(),
                                   result.run.xi0.data() + result.run.xi0.size());
  doc["consistency_gap"] = result.gap;
  if (cfg.population) {
    doc["aggregate_samples"] = cfg.population->options.aggregate_samples;
    doc["seed"] = cfg.population->options.seed;
  }
  write_text_file(join(dir, "population.json"), doc.dump(2) + "\n");
}

bool ReproReport::passed() const {
  return std::all_of(rows.begin(), rows.end(),
                     [](const ReproRow& r) { return r.pass; });
}

ReproReport repro(const RunConfig& cfg, const std::string& id,
                  std::string* stage) {
  ReproReport report;
  report.id = id;
  report.config = cfg;

  set_stage(stage, "ground truth");
  if (!ground_truth(cfg)) {
    throw PreconditionError("repro needs a built-in example model");
  }
  set_stage(stage, "collect");
  report.collected = collect(cfg);
  set_stage(stage, "learn");
  report.learned = learn(cfg, report.collected.data);

  const LearnResult& l = report.learned;
  const Reference& ref = *l.reference;
  auto iterations_row = [&](int lo, int hi, const std::string& target) {
    report.rows.push_back({"iterations", std::to_string(l.iterations), target,
                           l.iterations >= lo && l.iterations <= hi});
  };
  auto error_row = [&](const char* name, double value) {
    report.rows.push_back({name, fmt::format("{:.4f}", value),
                           fmt::format("<= {}", kErrorTolerance),
                           value <= kErrorTolerance});
  };

  if (id == "example1") {
    iterations_row(4, 8, "6 +/- 2");
    error_row("relative error K", ref.k_error);
    error_row("relative error K_Y", ref.ky_error.value_or(0.0));
    set_stage(stage, "population");
    report.population = population(cfg, l.gains);
    report.rows.push_back({"consistency gap",
                           fmt::format("{:.4f}", report.population->gap),
                           fmt::format("<= {}", kGapTolerance),
                           report.population->gap <= kGapTolerance});
  } else if (id == "example2-pi") {
    iterations_row(2, 6, "4 +/- 2");
    error_row("relative error K", ref.k_error);
  } else {
    iterations_row(86, 344, "[86, 344]");
    error_row("relative error K", ref.k_error);
  }
  set_stage(stage, "report");
  return report;
}

std::string repro_table(const ReproReport& report) {
  const auto& t = report.config.trajectory;
  std::string out = fmt::format("{} (M = {}, seed {})\n", report.id,
                                t.mc.samples, t.mc.seed);
  out += fmt::format("{:<20} {:>10}  {:<12} {}\n", "quantity", "value",
                     "target", "status");
  for (const ReproRow& r : report.rows) {
    out += fmt::format("{:<20} {:>10}  {:<12} {}\n", r.quantity, r.value,
                       r.target, r.pass ? "PASS" : "FAIL");
  }
  return out;
}

}  // namespace mfglq::cli
