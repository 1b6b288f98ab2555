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

#include "mfglq/serialize.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "json.hpp"
#include "mfglq/errors.hpp"

namespace mfglq {

namespace {

using nlohmann::json;

json matrix_json(const Matrix& m) {
  json rows = json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from(const json& doc, const char* key) {
  if (!doc.contains(key)) {
    throw IoError(std::string("missing field \"") + key + "\"");
  }
  const json& rows = doc.at(key);
  // A bare number is accepted for 1x1 blocks.
  if (rows.is_number()) return Matrix::Constant(1, 1, rows.get<double>());
  if (!rows.is_array() || rows.empty()) {
    throw IoError(std::string("field \"") + key + "\" must be a non-empty array");
  }
  const std::size_t cols = rows.front().is_array() ? rows.front().size() : 0;
  if (cols == 0) {
    throw IoError(std::string("field \"") + key +
                  "\" must be an array of non-empty rows");
  }
  Matrix m(static_cast<Index>(rows.size()), static_cast<Index>(cols));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!rows[i].is_array() || rows[i].size() != cols) {
      throw IoError(std::string("field \"") + key + "\" has ragged rows");
    }
    for (std::size_t j = 0; j < cols; ++j) {
      if (!rows[i][j].is_number()) {
        throw IoError(std::string("field \"") + key + "\" has non-numeric entries");
      }
      m(static_cast<Index>(i), static_cast<Index>(j)) = rows[i][j].get<double>();
    }
  }
  return m;
}

json parse(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw IoError(std::string("malformed JSON: ") + e.what());
  }
}

SymMatrix symmetric_from(const json& doc, const char* key) {
  const Matrix m = matrix_from(doc, key);
  if (m.rows() != m.cols()) {
    throw IoError(std::string("field \"") + key + "\" must be square");
  }
  if ((m - m.transpose()).norm() > 1e-12 * std::max(1.0, m.norm())) {
    throw IoError(std::string("field \"") + key + "\" must be symmetric");
  }
  return SymMatrix(m);
}

void write_row(std::ostream& out, double t, const Vector& values) {
  out << t;
  for (Index i = 0; i < values.size(); ++i) out << ',' << values(i);
  out << '\n';
}

std::ostream& csv_precision(std::ostream& out) {
  return out << std::setprecision(17);
}

}  // namespace

std::string model_to_json(const SystemModel& model) {
  json doc;
  doc["A"] = matrix_json(model.A);
  doc["B"] = matrix_json(model.B);
  doc["C"] = matrix_json(model.C);
  doc["Q"] = matrix_json(model.Q.matrix());
  doc["R"] = matrix_json(model.R.matrix());
  doc["rho"] = model.rho;
  return doc.dump(2);
}

SystemModel model_from_json(std::string_view text) {
  const json doc = parse(text);
  if (!doc.is_object()) throw IoError("model document must be an object");
  SystemModel model;
  model.A = matrix_from(doc, "A");
  model.B = matrix_from(doc, "B");
  model.C = matrix_from(doc, "C");
  model.Q = symmetric_from(doc, "Q");
  model.R = symmetric_from(doc, "R");
  if (!doc.contains("rho") || !doc.at("rho").is_number()) {
    throw IoError("missing numeric field \"rho\"");
  }
  model.rho = doc.at("rho").get<double>();
  model.validate();
  return model;
}

std::string data_matrices_to_json(const DataMatrices& dm) {
  json doc;
  doc["I"] = matrix_json(dm.I);
  doc["IX"] = matrix_json(dm.IX);
  doc["IXV"] = matrix_json(dm.IXV);
  doc["IXhat"] = matrix_json(dm.IXhat);
  doc["n"] = dm.n;
  doc["m"] = dm.m;
  doc["rho"] = dm.rho;
  doc["intervals"] = dm.intervals;
  return doc.dump(1);
}

DataMatrices data_matrices_from_json(std::string_view text) {
  const json doc = parse(text);
  if (!doc.is_object()) throw IoError("data document must be an object");
  DataMatrices dm;
  try {
    dm.I = matrix_from(doc, "I");
    dm.IX = matrix_from(doc, "IX");
    dm.IXV = matrix_from(doc, "IXV");
    dm.IXhat = matrix_from(doc, "IXhat");
    dm.n = doc.at("n").get<Index>();
    dm.m = doc.at("m").get<Index>();
    dm.rho = doc.at("rho").get<double>();
    dm.intervals = doc.at("intervals").get<std::vector<double>>();
  } catch (const json::exception& e) {
    throw IoError(std::string("bad data document: ") + e.what());
  }
  dm.validate();
  return dm;
}

GainPair gains_from_json(std::string_view text) {
  const json doc = parse(text);
  if (!doc.is_object()) throw IoError("gains document must be an object");
  GainPair gains{matrix_from(doc, "K"), matrix_from(doc, "K_Y")};
  if (gains.K.rows() != gains.K_Y.rows() || gains.K.cols() != gains.K_Y.cols()) {
    throw IoError("K and K_Y differ in shape");
  }
  return gains;
}

void write_trajectory_csv(std::ostream& out, const MeanTrajectory& traj) {
  csv_precision(out) << "t";
  for (Index i = 0; i < traj.X.rows(); ++i) out << ",X" << i + 1;
  for (Index i = 0; i < traj.V.rows(); ++i) out << ",V" << i + 1;
  out << '\n';
  Vector row(traj.X.rows() + traj.V.rows());
  for (Index k = 0; k < traj.X.cols(); ++k) {
    row << traj.X.col(k), traj.V.col(k);
    write_row(out, traj.grid.at(static_cast<std::size_t>(k)), row);
  }
}

std::string trajectory_sidecar_json(const TimeGrid& grid, std::uint64_t seed,
                                    std::size_t samples) {
  json doc;
  doc["grid"] = {{"t0", grid.t0}, {"dt", grid.dt}, {"steps", grid.steps}};
  doc["seed"] = seed;
  doc["samples"] = samples;
  return doc.dump(2);
}

void write_population_mean_csv(std::ostream& out, const PopulationRun& run,
                               std::size_t stride) {
  const Index n = run.average.rows();
  csv_precision(out) << "t";
  for (Index i = 0; i < n; ++i) out << ",avg" << i + 1;
  for (Index i = 0; i < n; ++i) out << ",agg" << i + 1;
  out << '\n';
  Vector row(2 * n);
  const std::size_t s = std::max<std::size_t>(1, stride);
  for (std::size_t k = 0; k < run.grid.points(); k += s) {
    const Index col = static_cast<Index>(k);
    row << run.average.col(col), run.aggregate.col(col);
    write_row(out, run.grid.at(k), row);
  }
}

void write_population_agents_csv(std::ostream& out, const PopulationRun& run,
                                 std::size_t stride) {
  const Index n = run.average.rows();
  csv_precision(out) << "t";
  for (std::size_t a = 0; a < run.paths.size(); ++a) {
    for (Index i = 0; i < n; ++i) out << ",a" << a << "_x" << i + 1;
  }
  out << '\n';
  Vector row(n * static_cast<Index>(run.paths.size()));
  const std::size_t s = std::max<std::size_t>(1, stride);
  for (std::size_t k = 0; k < run.grid.points(); k += s) {
    for (std::size_t a = 0; a < run.paths.size(); ++a) {
      row.segment(static_cast<Index>(a) * n, n) =
          run.paths[a].col(static_cast<Index>(k));
    }
    write_row(out, run.grid.at(k), row);
  }
}

void write_pi_history_csv(std::ostream& out, const PiHistory& history) {
  csv_precision(out) << "k,k_step,ky_step";
  if (!history.records.empty()) {
    const Index len = sym_size(history.records.front().P.dim());
    for (Index i = 0; i < len; ++i) out << ",P" << i + 1;
    for (Index i = 0; i < len; ++i) out << ",Y" << i + 1;
  }
  out << '\n';
  for (const auto& rec : history.records) {
    out << rec.k << ',' << rec.k_step << ',' << rec.ky_step;
    const Vector p = vecs(rec.P);
    const Vector y = vecs(rec.Y);
    for (Index i = 0; i < p.size(); ++i) out << ',' << p(i);
    for (Index i = 0; i < y.size(); ++i) out << ',' << y(i);
    out << '\n';
  }
}

void write_vi_history_csv(std::ostream& out, const ViHistory& history) {
  csv_precision(out) << "k,gamma,q,reset,ratio";
  if (!history.records.empty()) {
    const Index len = sym_size(history.records.front().P.dim());
    for (Index i = 0; i < len; ++i) out << ",P" << i + 1;
  }
  out << '\n';
  for (const auto& rec : history.records) {
    out << rec.k << ',' << rec.gamma << ',' << rec.q << ','
        << (rec.reset ? 1 : 0) << ',' << rec.ratio;
    const Vector p = vecs(rec.P);
    for (Index i = 0; i < p.size(); ++i) out << ',' << p(i);
    out << '\n';
  }
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("failed reading " + path);
  return buf.str();
}

void write_text_file(const std::string& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw IoError("failed writing " + path);
}

}  // namespace mfglq
