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

#include "mfglq_cli/app.hpp"

#include <fmt/format.h>
#include <spdlog/sinks/stdout_sinks.h>
#include <spdlog/spdlog.h>

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>

#include "CLI11.hpp"
#include "mfglq/errors.hpp"
#include "mfglq/serialize.hpp"
#include "mfglq_cli/config.hpp"
#include "mfglq_cli/pipeline.hpp"

namespace mfglq::cli {

namespace {

struct Options {
  std::string config;
  std::string data;
  std::string gains;
  std::string out;
  std::string example;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> samples;
  std::optional<unsigned> threads;
};

}  // namespace

void configure_logging() {
  static const auto logger = [] {
    auto l = std::make_shared<spdlog::logger>(
        "mfglq", std::make_shared<spdlog::sinks::stderr_sink_mt>());
    l->set_pattern("[%Y-%m-%d %H:%M:%S.%e] [%l] %v");
    spdlog::set_default_logger(l);
    return l;
  }();
  const char* env = std::getenv("MFG_LOG");
  const std::string level = env != nullptr ? env : "info";
  if (level == "error") {
    logger->set_level(spdlog::level::err);
  } else if (level == "info") {
    logger->set_level(spdlog::level::info);
  } else if (level == "debug") {
    logger->set_level(spdlog::level::debug);
  } else {
    throw PreconditionError("MFG_LOG must be one of error, info, debug (got \"" +
                            level + "\")");
  }
}

namespace {

void apply_trajectory_overrides(RunConfig& cfg, const Options& o) {
  if (o.seed) cfg.trajectory.mc.seed = *o.seed;
  if (o.samples) {
    if (*o.samples == 0) throw PreconditionError("--samples must be at least 1");
    cfg.trajectory.mc.samples = *o.samples;
  }
  if (o.threads && *o.threads > 0) cfg.trajectory.mc.threads = *o.threads;
}

std::string out_dir(const RunConfig& cfg, const Options& o) {
  return o.out.empty() ? cfg.out : o.out;
}

std::string row_text(const Matrix& m) {
  std::string s = "[";
  for (Index i = 0; i < m.rows(); ++i) {
    if (i > 0) s += "; ";
    for (Index j = 0; j < m.cols(); ++j) {
      s += fmt::format("{}{:.4f}", j > 0 ? ", " : "", m(i, j));
    }
  }
  return s + "]";
}

void print_rank(std::ostream& out, const RunConfig& cfg, const RankReport& r) {
  const char* which = cfg.learner.kind == LearnerKind::kPi ? "pi" : "vi";
  if (r.satisfied) {
    out << fmt::format("rank condition ({}): {}/{} satisfied\n", which, r.rank,
                       r.required);
  } else {
    out << fmt::format(
        "warning: rank condition ({}) not met: rank {} of {} required; "
        "richer exploration or more intervals are needed\n",
        which, r.rank, r.required);
  }
}

int cmd_collect(const Options& o, std::ostream& out) {
  RunConfig cfg = load_config(o.config);
  apply_trajectory_overrides(cfg, o);
  const CollectResult result = collect(cfg);
  const std::string dir = out_dir(cfg, o);
  write_collect(dir, cfg, result);
  out << fmt::format("wrote {} ({} rows)\n",
                     (std::filesystem::path(dir) / "data.json").string(),
                     result.data.rows());
  print_rank(out, cfg, result.rank);
  return kOk;
}

void print_learn(std::ostream& out, const LearnResult& r) {
  out << fmt::format("learner {}: {} iteration(s)",
                     r.kind == LearnerKind::kPi ? "pi" : "vi", r.iterations);
  if (r.kind == LearnerKind::kVi) out << fmt::format(", {} reset(s)", r.resets);
  out << "\n";
  out << "K   = " << row_text(r.gains.K) << "\n";
  out << "K_Y = " << row_text(r.gains.K_Y) << "\n";
  if (r.reference) {
    out << fmt::format("relative error K: {:.4f}", r.reference->k_error);
    if (r.reference->ky_error) {
      out << fmt::format(", K_Y: {:.4f}", *r.reference->ky_error);
    }
    out << "\n";
  }
}

int cmd_learn(const Options& o, std::ostream& out) {
  const RunConfig cfg = load_config(o.config);
  const DataMatrices data = data_matrices_from_json(read_text_file(o.data));
  const LearnResult result = learn(cfg, data);
  const std::string dir = out_dir(cfg, o);
  write_learn(dir, result);
  print_learn(out, result);
  out << fmt::format("wrote {}\n",
                     (std::filesystem::path(dir) / "summary.json").string());
  return kOk;
}

void print_gap(std::ostream& out, const PopulationResult& r) {
  out << fmt::format(
      "consistency gap sup|avg - xhat| / sup|xhat| = {:.4f} ({} agents)\n", r.gap,
      r.run.agents);
}

int cmd_population(const Options& o, std::ostream& out) {
  RunConfig cfg = load_config(o.config);
  if (cfg.population && o.seed) cfg.population->options.seed = *o.seed;
  const GainPair gains = gains_from_json(read_text_file(o.gains));
  const PopulationResult result = population(cfg, gains);
  const std::string dir = out_dir(cfg, o);
  write_population(dir, cfg, result);
  print_gap(out, result);
  out << fmt::format("wrote {}, {}\n",
                     (std::filesystem::path(dir) / "population_mean.csv").string(),
                     (std::filesystem::path(dir) / "population_agents.csv").string());
  return kOk;
}

int cmd_repro(const Options& o, std::ostream& out, std::string& stage) {
  RunConfig cfg = builtin_config(o.example);
  apply_trajectory_overrides(cfg, o);
  if (cfg.population && o.seed) cfg.population->options.seed = *o.seed;
  const ReproReport report = repro(cfg, o.example, &stage);
  if (!o.out.empty()) {
    stage = "write";
    write_collect(o.out, cfg, report.collected);
    write_learn(o.out, report.learned);
    if (report.population) write_population(o.out, cfg, *report.population);
  }
  print_rank(out, cfg, report.collected.rank);
  out << repro_table(report);
  return report.passed() ? kOk : kThresholdFailed;
}

int report_error(std::ostream& err, const std::string& stage, const char* what,
                 int code) {
  if (stage.empty()) {
    err << "mfglq: error: " << what << "\n";
  } else {
    err << "mfglq: error in stage \"" << stage << "\": " << what << "\n";
  }
  return code;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Mean-field LQ game solver: data collection, learning and "
               "population experiments",
               "mfglq"};
  app.require_subcommand(1, 1);
  Options o;

  auto add_config = [&](CLI::App* sub) {
    sub->add_option("--config", o.config,
                    "Config file, or a built-in name (example1, example2-pi, "
                    "example2-vi)")
        ->required();
  };
  auto add_out = [&](CLI::App* sub) {
    sub->add_option("--out", o.out, "Output directory (default: config \"out\")");
  };
  auto add_mc = [&](CLI::App* sub) {
    sub->add_option("--seed", o.seed, "Random seed");
    sub->add_option("--samples", o.samples, "Monte-Carlo sample count M");
    sub->add_option("--threads", o.threads, "Worker threads (0: all cores)");
  };

  CLI::App* collect_cmd =
      app.add_subcommand("collect", "Simulate the mean trajectory and build data matrices");
  add_config(collect_cmd);
  add_out(collect_cmd);
  add_mc(collect_cmd);

  CLI::App* learn_cmd =
      app.add_subcommand("learn", "Run the configured learner on a data file");
  add_config(learn_cmd);
  learn_cmd->add_option("--data", o.data, "data.json written by collect")->required();
  add_out(learn_cmd);

  CLI::App* pop_cmd = app.add_subcommand(
      "population", "Simulate a finite population under learned gains");
  add_config(pop_cmd);
  pop_cmd->add_option("--gains", o.gains, "JSON with K and K_Y (e.g. summary.json)")
      ->required();
  pop_cmd->add_option("--seed", o.seed, "Random seed");
  add_out(pop_cmd);

  CLI::App* repro_cmd =
      app.add_subcommand("repro", "Reproduce a built-in example end to end");
  repro_cmd->add_option("example", o.example, "example1, example2-pi or example2-vi")
      ->required()
      ->check(CLI::IsMember(builtin_names()));
  repro_cmd->add_option("--out", o.out, "Also write all result files here");
  add_mc(repro_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  std::string stage;
  try {
    configure_logging();
    if (*collect_cmd) return cmd_collect(o, out);
    if (*learn_cmd) return cmd_learn(o, out);
    if (*pop_cmd) return cmd_population(o, out);
    return cmd_repro(o, out, stage);
  } catch (const RankDeficientError& e) {
    return report_error(err, stage, e.what(), kRank);
  } catch (const NonConvergenceError& e) {
    return report_error(err, stage, e.what(), kNumerical);
  } catch (const NumericalError& e) {
    return report_error(err, stage, e.what(), kNumerical);
  } catch (const SolvabilityError& e) {
    return report_error(err, stage, e.what(), kNumerical);
  } catch (const Error& e) {
    return report_error(err, stage, e.what(), kUsage);
  } catch (const std::exception& e) {
    return report_error(err, stage, e.what(), kInternal);
  }
}

}  // namespace mfglq::cli
