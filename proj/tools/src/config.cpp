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

#include "mfglq_cli/config.hpp"

#include <algorithm>
#include <filesystem>
#include <initializer_list>
#include <thread>

#include "json.hpp"
#include "mfglq/errors.hpp"
#include "mfglq/examples.hpp"
#include "mfglq/serialize.hpp"

namespace mfglq::cli {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw PreconditionError("config: " + where + ": " + what);
}

const json kExample1 = json::parse(R"({
  "model": "example1",
  "trajectory": {
    "t0": 0.0, "dt": 1e-4, "steps": 20000,
    "samples": 100000, "seed": 1, "threads": 0,
    "initial": {"point": [1, 1]},
    "gain": [[35, 25]],
    "exploration": {"kind": "sinusoid_sum", "terms": 100, "amplitude": 0.3,
                    "freq_lo": -1000, "freq_hi": 1000, "seed": 7}
  },
  "intervals": {"start": 0.0, "spacing": 0.1, "count": 20},
  "learner": {"kind": "pi", "K0": [[35, 25]], "K0_Y": [[35, 25]],
              "eps": 1e-3, "max_iter": 100},
  "population": {"agents": 200, "aggregate_samples": 100, "seed": 1,
                 "initial": {"uniform": {"lo": [0, 0], "hi": [2, 2]}},
                 "csv_stride": 100},
  "out": "out/example1"
})");

const json kExample2Pi = json::parse(R"({
  "model": "example2",
  "trajectory": {
    "t0": 0.0, "dt": 1e-4, "steps": 20000,
    "samples": 1000000, "seed": 1, "threads": 0,
    "initial": {"point": [-1, 0, 1]},
    "gain": [[-1, -1, 14]],
    "exploration": {"kind": "sinusoid", "amplitude": 1.0, "frequency": -24.6}
  },
  "intervals": {"start": 0.0, "spacing": 0.1, "count": 20},
  "learner": {"kind": "pi", "K0": [[-1, -1, 14]], "K0_Y": [[0, 0, 0]],
              "eps": 1e-3, "max_iter": 100},
  "out": "out/example2-pi"
})");

const json kExample2Vi = json::parse(R"({
  "model": "example2",
  "trajectory": {
    "t0": 0.0, "dt": 1e-4, "steps": 20000,
    "samples": 200000, "seed": 1, "threads": 0,
    "initial": {"point": [-1, 0, 1]},
    "gain": [[0, 0, 0]],
    "exploration": {"kind": "sinusoid", "amplitude": 1.0, "frequency": -6.0}
  },
  "intervals": {"start": 0.0, "spacing": 0.1, "count": 20},
  "learner": {"kind": "vi",
              "P0": [[0.1, 0, 0], [0, 0.1, 0], [0, 0, 0.1]],
              "gamma_c": 3.0, "radius_c": 100.0,
              "eps": 1e-3, "max_iter": 10000},
  "out": "out/example2-vi"
})");

const json& builtin_json(std::string_view name) {
  if (name == "example1") return kExample1;
  if (name == "example2-pi") return kExample2Pi;
  if (name == "example2-vi") return kExample2Vi;
  throw PreconditionError("unknown built-in config \"" + std::string(name) +
                          "\" (expected example1, example2-pi or example2-vi)");
}

void only_keys(const json& obj, const std::string& where,
               std::initializer_list<const char*> keys) {
  if (!obj.is_object()) fail(where, "must be an object");
  for (const auto& item : obj.items()) {
    const bool known = std::any_of(keys.begin(), keys.end(), [&](const char* k) {
      return item.key() == k;
    });
    if (!known) fail(where, "unknown field \"" + item.key() + "\"");
  }
}

const json& field(const json& obj, const std::string& where, const char* key) {
  if (!obj.contains(key)) fail(where, std::string("missing field \"") + key + "\"");
  return obj.at(key);
}

double number(const json& obj, const std::string& where, const char* key) {
  const json& v = field(obj, where, key);
  if (!v.is_number()) fail(where, std::string("\"") + key + "\" must be a number");
  return v.get<double>();
}

std::uint64_t count(const json& obj, const std::string& where, const char* key) {
  const json& v = field(obj, where, key);
  if (!v.is_number_unsigned()) {
    fail(where, std::string("\"") + key + "\" must be a non-negative integer");
  }
  return v.get<std::uint64_t>();
}

Vector vector_of(const json& v, const std::string& where) {
  if (!v.is_array() || v.empty()) fail(where, "must be a non-empty array");
  Vector out(static_cast<Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number()) fail(where, "has non-numeric entries");
    out(static_cast<Index>(i)) = v[i].get<double>();
  }
  return out;
}

Matrix matrix_of(const json& v, const std::string& where) {
  if (!v.is_array() || v.empty() || !v.front().is_array() || v.front().empty()) {
    fail(where, "must be a non-empty array of rows");
  }
  const std::size_t cols = v.front().size();
  Matrix out(static_cast<Index>(v.size()), static_cast<Index>(cols));
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_array() || v[i].size() != cols) fail(where, "has ragged rows");
    out.row(static_cast<Index>(i)) = vector_of(v[i], where).transpose();
  }
  return out;
}

void expect_shape(const Matrix& m, Index rows, Index cols, const std::string& where) {
  if (m.rows() != rows || m.cols() != cols) {
    throw DimensionError("config: " + where + ": expected " +
                         std::to_string(rows) + "x" + std::to_string(cols) +
                         ", got " + std::to_string(m.rows()) + "x" +
                         std::to_string(m.cols()));
  }
}

InitialLaw initial_of(const json& v, const std::string& where, Index n) {
  only_keys(v, where, {"point", "uniform"});
  InitialLaw law = InitialLaw::point(Vector::Zero(1));
  if (v.contains("point") == v.contains("uniform")) {
    fail(where, "needs exactly one of \"point\" or \"uniform\"");
  }
  if (v.contains("point")) {
    law = InitialLaw::point(vector_of(v.at("point"), where + ".point"));
  } else {
    const json& box = v.at("uniform");
    only_keys(box, where + ".uniform", {"lo", "hi"});
    law = InitialLaw::uniform(vector_of(field(box, where, "lo"), where + ".lo"),
                              vector_of(field(box, where, "hi"), where + ".hi"));
  }
  if (law.dim() != n) {
    throw DimensionError("config: " + where + ": initial state has dimension " +
                         std::to_string(law.dim()) + ", model has " +
                         std::to_string(n));
  }
  return law;
}

ExplorationSignal exploration_of(const json& v, const std::string& where) {
  if (!v.is_object()) fail(where, "must be an object");
  const json& kind = field(v, where, "kind");
  if (!kind.is_string()) fail(where, "\"kind\" must be a string");
  const std::string k = kind.get<std::string>();
  if (k == "none") {
    only_keys(v, where, {"kind"});
    return ExplorationSignal::none();
  }
  if (k == "sinusoid") {
    only_keys(v, where, {"kind", "amplitude", "frequency"});
    return ExplorationSignal::single_sinusoid(number(v, where, "amplitude"),
                                              number(v, where, "frequency"));
  }
  if (k == "sinusoid_sum") {
    only_keys(v, where,
              {"kind", "terms", "amplitude", "freq_lo", "freq_hi", "seed"});
    const double lo = number(v, where, "freq_lo");
    const double hi = number(v, where, "freq_hi");
    if (!(lo <= hi)) fail(where, "freq_lo must not exceed freq_hi");
    return ExplorationSignal::sinusoid_sum(count(v, where, "terms"),
                                           number(v, where, "amplitude"), lo, hi,
                                           count(v, where, "seed"));
  }
  fail(where, "unknown exploration kind \"" + k + "\"");
}

SystemModel model_of(const json& v, std::string& example) {
  example.clear();
  if (v.is_string()) {
    const std::string name = v.get<std::string>();
    if (name == "example1") {
      example = name;
      return examples::example1();
    }
    if (name == "example2") {
      example = name;
      return examples::example2();
    }
    fail("model", "unknown built-in model \"" + name + "\"");
  }
  if (!v.is_object()) fail("model", "must be a built-in name or an object");
  return model_from_json(v.dump());
}

unsigned threads_of(std::uint64_t requested) {
  if (requested > 0) return static_cast<unsigned>(requested);
  return std::max(1u, std::thread::hardware_concurrency());
}

RunConfig from_json(const json& doc) {
  only_keys(doc, "document",
            {"model", "trajectory", "intervals", "learner", "population", "out"});
  RunConfig cfg;
  cfg.model = model_of(field(doc, "document", "model"), cfg.example);
  cfg.model.validate();
  const Index n = cfg.model.n();
  const Index m = cfg.model.m();

  const json& tj = field(doc, "document", "trajectory");
  const std::string tw = "trajectory";
  only_keys(tj, tw,
            {"t0", "dt", "steps", "samples", "seed", "threads", "initial", "gain",
             "exploration"});
  TrajectoryConfig& traj = cfg.trajectory;
  traj.grid = TimeGrid{number(tj, tw, "t0"), number(tj, tw, "dt"),
                       count(tj, tw, "steps")};
  traj.grid.validate();
  traj.mc.samples = count(tj, tw, "samples");
  if (traj.mc.samples == 0) fail(tw, "\"samples\" must be at least 1");
  traj.mc.seed = count(tj, tw, "seed");
  traj.mc.threads = threads_of(tj.contains("threads") ? count(tj, tw, "threads") : 0);
  traj.initial = initial_of(field(tj, tw, "initial"), tw + ".initial", n);
  traj.policy.K = matrix_of(field(tj, tw, "gain"), tw + ".gain");
  expect_shape(traj.policy.K, m, n, tw + ".gain");
  traj.policy.e = exploration_of(field(tj, tw, "exploration"), tw + ".exploration");

  const json& ij = field(doc, "document", "intervals");
  if (ij.is_object() && ij.contains("points")) {
    only_keys(ij, "intervals", {"points"});
    const Vector s = vector_of(ij.at("points"), "intervals.points");
    cfg.intervals = IntervalSet(std::vector<double>(s.data(), s.data() + s.size()));
  } else {
    only_keys(ij, "intervals", {"start", "spacing", "count"});
    cfg.intervals = IntervalSet::uniform(number(ij, "intervals", "start"),
                                         number(ij, "intervals", "spacing"),
                                         count(ij, "intervals", "count"));
  }
  const auto& s = cfg.intervals.points();
  const double slack = 0.5 * traj.grid.dt;
  if (s.front() < traj.grid.t0 - slack || s.back() > traj.grid.t_end() + slack) {
    throw RangeError("config: intervals: [" + std::to_string(s.front()) + ", " +
                     std::to_string(s.back()) + "] leaves the trajectory grid");
  }

  const json& lj = field(doc, "document", "learner");
  const std::string lw = "learner";
  if (!lj.is_object()) fail(lw, "must be an object");
  const json& kind = field(lj, lw, "kind");
  LearnerConfig& learner = cfg.learner;
  if (kind == "pi") {
    only_keys(lj, lw, {"kind", "K0", "K0_Y", "eps", "max_iter"});
    learner.kind = LearnerKind::kPi;
    learner.K0 = matrix_of(field(lj, lw, "K0"), lw + ".K0");
    learner.K0_Y = matrix_of(field(lj, lw, "K0_Y"), lw + ".K0_Y");
    expect_shape(learner.K0, m, n, lw + ".K0");
    expect_shape(learner.K0_Y, m, n, lw + ".K0_Y");
    learner.pi.eps = number(lj, lw, "eps");
    learner.pi.max_iter = static_cast<int>(count(lj, lw, "max_iter"));
    if (!(learner.pi.eps > 0.0)) fail(lw, "\"eps\" must be positive");
    if (learner.pi.max_iter < 1) fail(lw, "\"max_iter\" must be at least 1");
  } else if (kind == "vi") {
    only_keys(lj, lw, {"kind", "P0", "gamma_c", "radius_c", "eps", "max_iter"});
    learner.kind = LearnerKind::kVi;
    const Matrix p0 = matrix_of(field(lj, lw, "P0"), lw + ".P0");
    expect_shape(p0, n, n, lw + ".P0");
    if (p0 != p0.transpose()) fail(lw, "\"P0\" must be symmetric");
    learner.P0 = SymMatrix(p0);
    learner.gamma.c = number(lj, lw, "gamma_c");
    learner.bounds.c = number(lj, lw, "radius_c");
    learner.vi.eps = number(lj, lw, "eps");
    learner.vi.max_iter = static_cast<int>(count(lj, lw, "max_iter"));
    if (!(learner.gamma.c > 0.0)) fail(lw, "\"gamma_c\" must be positive");
    if (!(learner.bounds.c > 0.0)) fail(lw, "\"radius_c\" must be positive");
    if (!(learner.vi.eps > 0.0)) fail(lw, "\"eps\" must be positive");
    if (learner.vi.max_iter < 1) fail(lw, "\"max_iter\" must be at least 1");
  } else {
    fail(lw, "\"kind\" must be \"pi\" or \"vi\"");
  }

  if (doc.contains("population") && !doc.at("population").is_null()) {
    const json& pj = doc.at("population");
    const std::string pw = "population";
    only_keys(pj, pw,
              {"agents", "aggregate_samples", "seed", "initial", "csv_stride"});
    PopulationConfig pop;
    pop.options.agents = count(pj, pw, "agents");
    pop.options.aggregate_samples = count(pj, pw, "aggregate_samples");
    pop.options.seed = count(pj, pw, "seed");
    if (pop.options.agents == 0) fail(pw, "\"agents\" must be at least 1");
    if (pop.options.aggregate_samples == 0) {
      fail(pw, "\"aggregate_samples\" must be at least 1");
    }
    pop.initial = initial_of(field(pj, pw, "initial"), pw + ".initial", n);
    if (pj.contains("csv_stride")) pop.csv_stride = count(pj, pw, "csv_stride");
    if (pop.csv_stride == 0) fail(pw, "\"csv_stride\" must be at least 1");
    cfg.population = pop;
  }

  if (doc.contains("out")) {
    if (!doc.at("out").is_string()) fail("out", "must be a string");
    cfg.out = doc.at("out").get<std::string>();
  }
  return cfg;
}

json resolve(json doc) {
  if (!doc.is_object()) fail("document", "must be an object");
  if (!doc.contains("base")) return doc;
  if (!doc.at("base").is_string()) fail("base", "must be a built-in name");
  json merged = builtin_json(doc.at("base").get<std::string>());
  doc.erase("base");
  merged.merge_patch(doc);
  // Objects that pick a variant are replaced, not merged, so switching kind
  // does not inherit the base's other fields.
  for (const char* path : {"/trajectory/exploration", "/trajectory/initial",
                           "/population/initial", "/learner"}) {
    const json::json_pointer ptr(path);
    if (doc.contains(ptr)) merged[ptr] = doc.at(ptr);
  }
  return merged;
}

}  // namespace

const std::vector<std::string>& builtin_names() {
  static const std::vector<std::string> names{"example1", "example2-pi",
                                              "example2-vi"};
  return names;
}

RunConfig parse_config(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw IoError(std::string("config: malformed JSON: ") + e.what());
  }
  return from_json(resolve(std::move(doc)));
}

RunConfig builtin_config(std::string_view name) {
  return from_json(builtin_json(name));
}

RunConfig load_config(const std::string& source) {
  const auto& names = builtin_names();
  if (std::find(names.begin(), names.end(), source) != names.end()) {
    return builtin_config(source);
  }
  if (!std::filesystem::exists(source)) {
    throw IoError("config \"" + source +
                  "\" is neither a built-in name nor an existing file");
  }
  return parse_config(read_text_file(source));
}

std::string builtin_config_json(std::string_view name) {
  return builtin_json(name).dump(2);
}

std::optional<GainPair> reference_gains(std::string_view example) {
  if (example == "example1") {
    const Matrix k = (Matrix(1, 2) << 35, 25).finished();
    return GainPair{k, k};
  }
  if (example == "example2") {
    return GainPair{(Matrix(1, 3) << -1, -1, 14).finished(), Matrix::Zero(1, 3)};
  }
  return std::nullopt;
}

}  // namespace mfglq::cli
